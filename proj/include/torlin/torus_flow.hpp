#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "torlin/errors.hpp"
#include "torlin/types.hpp"

namespace torlin {

/// A point of T^d = R^d / Z^d, coordinates in [0, 1).
struct TorusPoint {
  Vector coords;

  TorusPoint() = default;
  explicit TorusPoint(const Vector& v) : coords(reduce_mod_one(v)) {}

  Index dim() const { return coords.size(); }
};

/// A point of the universal cover R^d.
struct LiftPoint {
  Vector coords;

  LiftPoint() = default;
  explicit LiftPoint(Vector v) : coords(std::move(v)) {}

  Index dim() const { return coords.size(); }
  TorusPoint project() const { return TorusPoint(coords); }
};

inline bool same_point(const TorusPoint& a, const TorusPoint& b, double tol = kPointTolerance) {
  return a.dim() == b.dim() && circle_distance(a.coords, b.coords) <= tol;
}

/// Finite-ball lower bound for |n.alpha| |n|^tau; says nothing outside the ball.
struct DiophantineCertificate {
  double tau = 0.0;
  std::int64_t radius = 0;
  double c_min = 0.0;
  LatticeVector argmin;
  std::string norm_kind = "sup";
};

/// Direction of the linear flow, held in double and in Quad.
///
/// The Quad copy carries every digit of a decimal input and is used for
/// small divisors; the double copy drives geometry.
class DirectionVector {
 public:
  DirectionVector() = default;
  explicit DirectionVector(QuadVector alpha, double resonance_tolerance = kResonanceTolerance);

  static DirectionVector from_decimal(const std::vector<std::string>& digits);
  static DirectionVector from_values(const Vector& alpha);

  Index dim() const { return alpha_.size(); }
  const Vector& alpha() const { return alpha_; }
  const QuadVector& alpha_exact() const { return exact_; }
  double operator[](Index i) const { return alpha_[i]; }

  double resonance_tolerance() const { return tolerance_; }
  DirectionVector with_resonance_tolerance(double eps) const;

  const std::vector<LatticeVector>& resonances() const { return resonances_; }
  const std::optional<DiophantineCertificate>& certificate() const { return certificate_; }
  DirectionVector with_resonances(std::vector<LatticeVector> found) const;
  DirectionVector with_certificate(DiophantineCertificate cert) const;

  /// n.alpha formed in Quad and rounded once.
  double divisor(const LatticeVector& n) const;
  Quad divisor_exact(const LatticeVector& n) const;
  bool is_resonant(const LatticeVector& n) const;

 private:
  Vector alpha_;
  QuadVector exact_;
  double tolerance_ = kResonanceTolerance;
  std::vector<LatticeVector> resonances_;
  std::optional<DiophantineCertificate> certificate_;
};

/// phi^t on the cover: x + t alpha, unreduced.
LiftPoint flow(const LiftPoint& x, double t, const DirectionVector& alpha);

/// phi^t on the torus. Pass `lift` to receive the unreduced displaced point.
TorusPoint flow(const TorusPoint& x, double t, const DirectionVector& alpha, LiftPoint* lift = nullptr);

/// Every canonical n with 0 < |n|_inf <= radius and |n.alpha| < eps max(1, |n|_inf).
std::vector<LatticeVector> find_resonances(const DirectionVector& alpha, std::int64_t radius);

/// Brute-force minimum of |n.alpha| |n|_inf^tau over the ball. Throws ResonanceFound.
DiophantineCertificate certify_diophantine(const DirectionVector& alpha, double tau, std::int64_t radius);

/// p/q with q = 10^exponent approximating the Liouville coordinate.
struct Convergent {
  int exponent = 0;
  boost::multiprecision::cpp_int p;
  boost::multiprecision::cpp_int q;

  /// (p, -q) when it fits in 64-bit lattice coordinates.
  std::optional<LatticeVector> mode() const;
};

struct LiouvilleVector {
  DirectionVector direction;
  std::vector<Convergent> convergents;
  std::string lambda_digits;
};

/// alpha = (1, sum_k 10^-s_k). Throws BadSchedule.
LiouvilleVector liouville_vector(Index d, const std::vector<int>& schedule);

}  // namespace torlin
