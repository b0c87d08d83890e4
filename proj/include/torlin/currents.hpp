#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "torlin/curves.hpp"
#include "torlin/spectral.hpp"

namespace torlin {

/// E(u) = (e^{2 pi i u} - 1) / (2 pi i u), E(0) = 1. Series below |u| = 1e-4.
Complex segment_factor(double u);

/// Integration current of a curve.
class CurrentHandle {
 public:
  CurrentHandle() = default;
  explicit CurrentHandle(PiecewiseCurve source) : source_(std::move(source)) {}

  const PiecewiseCurve& source() const { return source_; }

 private:
  PiecewiseCurve source_;
};

/// Exact line integral of a trigonometric one-form along a polygonal curve.
double integrate(const PiecewiseCurve& g, const OneForm& eta);
double integrate(const CurveFamily& family, const OneForm& eta);

/// gamma~(eta).
double evaluate(const CurrentHandle& T, const OneForm& eta);

/// Finite signed sum of point masses.
class ZeroCurrent {
 public:
  struct Atom {
    TorusPoint point;
    double weight = 0.0;
  };

  void add(const TorusPoint& p, double weight, double tol = kPointTolerance);
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  /// sum_k w_k f(x_k).
  double pair(const TrigPoly& f) const;
  bool equals(const ZeroCurrent& other, double tol = kPointTolerance) const;

 private:
  std::vector<Atom> atoms_;
};

/// delta_omega - delta_alpha; empty for closed curves.
ZeroCurrent boundary(const CurrentHandle& T);

/// dT + delta_x for a curve starting at x, which is delta_omega.
/// Throws BasepointMismatch.
ZeroCurrent project_pi_x(const CurrentHandle& T, const TorusPoint& x);

/// True iff T1 - T2 is a loop current. Throws BasepointMismatch unless both start at the same point.
bool is_loop_current(const CurrentHandle& T1, const CurrentHandle& T2);

/// L(T)(eta) = T(eta - dh_eta). Cohomology solutions are memoized per handle;
/// copies share the memo.
class TwistedCurrent {
 public:
  TwistedCurrent() = default;
  TwistedCurrent(CurrentHandle base, DirectionVector alpha);

  const CurrentHandle& base() const { return base_; }
  const DirectionVector& alpha() const { return alpha_; }

  /// Solution for eta, computed once. Throws ResonantMode.
  const CohomologySolution& solution_for(const OneForm& eta) const;
  std::size_t memo_size() const;

 private:
  struct Memo;

  CurrentHandle base_;
  DirectionVector alpha_;
  std::shared_ptr<Memo> memo_;
};

TwistedCurrent twist(const CurrentHandle& T, const DirectionVector& alpha);

/// T(eta) - [h_eta(omega) - h_eta(alpha)], cross-checked against T(eta - dh_eta).
double evaluate_twisted(const TwistedCurrent& LT, const OneForm& eta);

enum class FormFamily { albanese, modulated, transverse, unit_flow };

const char* to_string(FormFamily family);

struct BatteryForm {
  std::string id;
  OneForm form;
  FormFamily family = FormFamily::modulated;
};

/// Nonzero n with |n|_inf <= cutoff and first nonzero entry positive, lexicographic.
std::vector<LatticeVector> canonical_modes(Index d, int cutoff);

/// "[n1,n2,...]" as used in battery form ids.
std::string lattice_tag(const LatticeVector& n);

/// {dx_j} and {cos, sin(2 pi n.x) dx_j : 0 < |n|_inf <= cutoff}, one of each +-n pair.
std::vector<BatteryForm> test_battery(Index d, int cutoff);

/// Sum over the family agrees with the other family on every battery form within `tol`.
bool broadly_equivalent(const CurveFamily& a, const CurveFamily& b, const std::vector<BatteryForm>& battery,
                        double tol);

}  // namespace torlin
