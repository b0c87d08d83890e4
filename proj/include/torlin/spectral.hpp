#pragma once

#include <map>
#include <vector>

#include "torlin/torus_flow.hpp"

namespace torlin {

/// Real cosine/sine amplitudes on one frequency: a cos(2 pi n.x) + b sin(2 pi n.x).
struct RealMode {
  LatticeVector n;
  double cos_amplitude = 0.0;
  double sin_amplitude = 0.0;
};

/// Real trigonometric polynomial on T^d with sparse complex coefficients.
///
/// Coefficients satisfy c_{-n} = conj(c_n); every constructor enforces it.
/// Absent modes are zero. Mode maps are ordered lexicographically so
/// iteration, printing and hashing are deterministic.
class TrigPoly {
 public:
  using ModeMap = std::map<LatticeVector, Complex, LatticeLess>;

  TrigPoly() = default;
  explicit TrigPoly(Index d);

  static TrigPoly constant(Index d, double value);
  static TrigPoly cosine(const LatticeVector& n, double amplitude = 1.0);
  static TrigPoly sine(const LatticeVector& n, double amplitude = 1.0);
  static TrigPoly from_real_modes(Index d, const std::vector<RealMode>& modes);

  /// Completes {n: c_n} by c_{-n} = conj(c_n). Throws MalformedInput when a
  /// listed pair or the mean violates Hermitian symmetry beyond `tol`.
  static TrigPoly from_coefficients(Index d, const std::vector<std::pair<LatticeVector, Complex>>& coefficients,
                                    double tol = 1e-12);

  Index dim() const { return dim_; }
  const ModeMap& modes() const { return modes_; }
  bool is_zero() const { return modes_.empty(); }
  Complex coefficient(const LatticeVector& n) const;
  double mean() const { return coefficient(LatticeVector::Zero(dim_)).real(); }
  TrigPoly without_mean() const;

  /// Largest |c_n|.
  double max_coefficient() const;

  double operator()(const Vector& x) const;
  double operator()(const TorusPoint& x) const { return (*this)(x.coords); }

  TrigPoly& operator+=(const TrigPoly& other);
  TrigPoly& operator-=(const TrigPoly& other);
  TrigPoly& operator*=(double s);
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(TrigPoly a, double s) { return a *= s; }
  friend TrigPoly operator*(double s, TrigPoly a) { return a *= s; }
  TrigPoly operator-() const { return *this * -1.0; }

  /// Builds a polynomial from a coefficient map the caller guarantees to be
  /// Hermitian. Exact zeros are dropped.
  static TrigPoly from_hermitian_map(Index d, ModeMap modes);

 private:
  void add_mode(const LatticeVector& n, Complex c);

  Index dim_ = 0;
  ModeMap modes_;
};

/// eta = sum_j p_j dx_j.
class OneForm {
 public:
  OneForm() = default;
  explicit OneForm(Index d);
  explicit OneForm(std::vector<TrigPoly> components);

  /// dx_j (zero-based j).
  static OneForm coordinate(Index d, Index j);
  /// f dx_j.
  static OneForm modulated(const TrigPoly& f, Index j);

  Index dim() const { return static_cast<Index>(components_.size()); }
  const TrigPoly& operator[](Index j) const { return components_[static_cast<std::size_t>(j)]; }
  const std::vector<TrigPoly>& components() const { return components_; }
  bool is_zero() const;

  OneForm& operator+=(const OneForm& other);
  OneForm& operator-=(const OneForm& other);
  OneForm& operator*=(double s);
  friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
  friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
  friend OneForm operator*(OneForm a, double s) { return a *= s; }
  friend OneForm operator*(double s, OneForm a) { return a *= s; }

 private:
  std::vector<TrigPoly> components_;
};

/// Solution of L_X h = f - c with h of zero mean.
struct CohomologySolution {
  TrigPoly h;
  double c = 0.0;
  /// max(1, max_n |h_n| / |f_n|): the small-divisor loss.
  double amplification = 1.0;
};

TrigPoly lie_derivative(const TrigPoly& f, const DirectionVector& alpha);

/// Throws ResonantMode when f carries a nonzero coefficient on a resonant mode.
CohomologySolution solve_cohomological(const TrigPoly& f, const DirectionVector& alpha);

/// eta(X) = sum_j alpha_j p_j.
TrigPoly contract_with_flow(const OneForm& eta, const DirectionVector& alpha);

/// (h_eta, c_eta) with L_X h_eta = eta(X) - c_eta.
CohomologySolution solve_for_form(const OneForm& eta, const DirectionVector& alpha);

OneForm exterior_derivative(const TrigPoly& f);

/// (sum_n (1 + |n|^2)^s |c_n|^2)^(1/2) with the Euclidean norm on n.
double sobolev_norm(const TrigPoly& f, double s);

}  // namespace torlin
