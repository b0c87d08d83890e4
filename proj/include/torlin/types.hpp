#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace torlin {

using Index = Eigen::Index;
using Complex = std::complex<double>;

// 113-bit binary float. Small divisors n.alpha are formed in this type so
// that decimal direction vectors keep their digits past double precision.
using Quad = boost::multiprecision::cpp_bin_float_quad;

using Vector = Eigen::VectorXd;
using QuadVector = Eigen::Matrix<Quad, Eigen::Dynamic, 1>;
using LatticeVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Default threshold for |n.alpha| < eps * max(1, |n|_inf).
inline constexpr double kResonanceTolerance = 1e-10;
/// Coincidence of torus points and lift displacements.
inline constexpr double kPointTolerance = 1e-12;
/// Sine of the angle below which a transverse segment counts as collinear with alpha.
inline constexpr double kCollinearTolerance = 1e-9;

/// Lexicographic order on lattice vectors, used to key sparse mode maps.
struct LatticeLess {
  bool operator()(const LatticeVector& a, const LatticeVector& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  }
};

inline std::int64_t sup_norm(const LatticeVector& n) {
  std::int64_t m = 0;
  for (Index i = 0; i < n.size(); ++i) m = std::max<std::int64_t>(m, std::llabs(n[i]));
  return m;
}

inline bool is_zero(const LatticeVector& n) { return sup_norm(n) == 0; }

/// Flip sign so the first nonzero entry is positive.
inline LatticeVector canonical_sign(LatticeVector n) {
  for (Index i = 0; i < n.size(); ++i) {
    if (n[i] != 0) {
      if (n[i] < 0) n = -n;
      break;
    }
  }
  return n;
}

/// n . alpha evaluated in Scalar arithmetic.
template <typename Scalar, typename Derived>
Scalar lattice_dot(const LatticeVector& n, const Eigen::MatrixBase<Derived>& alpha) {
  Scalar acc(0);
  for (Index i = 0; i < n.size(); ++i) {
    if (n[i] != 0) acc += Scalar(n[i]) * Scalar(alpha(i));
  }
  return acc;
}

/// Componentwise reduction into [0, 1).
template <typename Derived>
Vector reduce_mod_one(const Eigen::MatrixBase<Derived>& v) {
  Vector r(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    double x = static_cast<double>(v(i));
    x -= std::floor(x);
    if (x >= 1.0) x = 0.0;
    r[i] = x;
  }
  return r;
}

/// Sup-norm distance between the images of a and b in R^d / Z^d.
template <typename DerivedA, typename DerivedB>
double circle_distance(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  double m = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    const double diff = static_cast<double>(a(i)) - static_cast<double>(b(i));
    m = std::max(m, std::abs(diff - std::round(diff)));
  }
  return m;
}

/// Nearest integer vector to v.
template <typename Derived>
LatticeVector round_to_lattice(const Eigen::MatrixBase<Derived>& v) {
  LatticeVector k(v.size());
  for (Index i = 0; i < v.size(); ++i) k[i] = static_cast<std::int64_t>(std::llround(static_cast<double>(v(i))));
  return k;
}

}  // namespace torlin
