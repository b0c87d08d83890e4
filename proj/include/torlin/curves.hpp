#pragma once

#include <optional>
#include <vector>

#include "torlin/torus_flow.hpp"

namespace torlin {

enum class SegmentKind { flow, transverse };

const char* to_string(SegmentKind kind);

/// Oriented straight segment in lifted coordinates.
struct Segment {
  LiftPoint start;
  Vector displacement;
  SegmentKind kind = SegmentKind::transverse;

  LiftPoint end() const { return LiftPoint(start.coords + displacement); }
  double length() const { return displacement.norm(); }
  Segment reversed() const { return Segment{end(), -displacement, kind}; }
};

/// Flow when the displacement is parallel to alpha within kCollinearTolerance.
SegmentKind classify_displacement(const Vector& displacement, const DirectionVector& alpha);

/// Throws InvalidSegment when the declared kind disagrees with the geometry.
void validate_segment(const Segment& s, const DirectionVector& alpha);

struct CurvePosition;

/// A word of segments. Consecutive segments meet on the torus; their lifts may
/// differ by an integer deck shift. A curve without segments is the trivial
/// curve at its basepoint.
class PiecewiseCurve {
 public:
  PiecewiseCurve() = default;
  explicit PiecewiseCurve(std::vector<Segment> segments, double tol = kPointTolerance);

  static PiecewiseCurve trivial(const LiftPoint& at);
  /// Accumulates displacements from `basepoint`.
  static PiecewiseCurve from_steps(const LiftPoint& basepoint, const std::vector<std::pair<Vector, SegmentKind>>& steps);

  Index dim() const { return basepoint_.dim(); }
  const LiftPoint& basepoint_lift() const { return basepoint_; }
  const std::vector<Segment>& segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }
  bool is_trivial() const { return segments_.empty(); }

  LiftPoint end_lift() const;
  /// Endpoints on the torus. Slicing, joining and reversing carry them over
  /// unchanged, so excision keeps the boundary bit for bit.
  const TorusPoint& initial() const { return initial_; }
  const TorusPoint& terminal() const { return terminal_; }
  bool is_closed(double tol = kPointTolerance) const { return same_point(initial(), terminal(), tol); }
  double length() const;

  /// Same torus curve: equal kinds and displacements, starts equal mod 1.
  bool same_as(const PiecewiseCurve& other, double tol = kPointTolerance) const;

 private:
  friend PiecewiseCurve concatenate(const PiecewiseCurve&, const PiecewiseCurve&, double);
  friend PiecewiseCurve reverse(const PiecewiseCurve&);
  friend PiecewiseCurve slice(const PiecewiseCurve&, CurvePosition, CurvePosition);

  LiftPoint basepoint_;
  std::vector<Segment> segments_;
  TorusPoint initial_;
  TorusPoint terminal_;
};

void validate_curve(const PiecewiseCurve& g, const DirectionVector& alpha);

/// Polygon through lifted vertices; each edge is classified against alpha and
/// zero-length edges are skipped.
PiecewiseCurve polygon_through(const std::vector<Vector>& vertices, const DirectionVector& alpha);

/// g1 then g2; g2 is shifted by the integer vector aligning the junction.
/// Throws EndpointMismatch when omega(g1) != alpha(g2) beyond `tol`.
PiecewiseCurve concatenate(const PiecewiseCurve& g1, const PiecewiseCurve& g2, double tol = kPointTolerance);

PiecewiseCurve reverse(const PiecewiseCurve& g);

struct CurveFamily {
  std::vector<PiecewiseCurve> curves;

  double length() const;
  std::size_t segment_count() const;
};

/// Location on a curve: segment index and parameter u in [0, 1] inside it.
struct CurvePosition {
  std::size_t segment = 0;
  double u = 0.0;

  friend bool operator<(const CurvePosition& a, const CurvePosition& b) {
    return a.segment != b.segment ? a.segment < b.segment : a.u < b.u;
  }
};

/// Sub-arc of one curve between two positions.
struct ArcSpan {
  std::size_t curve = 0;
  CurvePosition begin;
  CurvePosition end;
};

/// A retraced arc r: `forward` traverses r, `backward` traverses r^-1.
/// forward precedes backward in (curve, position) order.
struct RetracedArcLocation {
  ArcSpan forward;
  ArcSpan backward;
  double length = 0.0;
  std::uint64_t family_fingerprint = 0;

  bool within_one_curve() const { return forward.curve == backward.curve; }
};

/// Content hash of a family; detects stale arc locations.
std::uint64_t fingerprint(const CurveFamily& family);

/// Longest maximal retraced arc, ties broken by lowest (curve, segment).
std::optional<RetracedArcLocation> find_retraced_arc(const CurveFamily& family);

/// One rewrite: {a r b r^-1 c} -> {ac, b}; {arb, c r^-1 d} -> {adcb} when the
/// second curve is closed, else {ad, cb}. Trivial results are dropped.
/// Throws StaleLocation.
CurveFamily simple_excision(const CurveFamily& family, const RetracedArcLocation& loc);

/// Excises until no retraced arc remains. `log` receives each excised arc.
CurveFamily maximal_excision(const CurveFamily& family, std::vector<RetracedArcLocation>* log = nullptr);

/// Sub-curve between two positions, splitting segments as needed.
PiecewiseCurve slice(const PiecewiseCurve& g, CurvePosition from, CurvePosition to);

struct SignedPoint {
  TorusPoint point;
  int multiplicity = 0;
};

/// Signed multiset with coincident points merged; zero multiplicities removed.
class SignedPointSet {
 public:
  void add(const TorusPoint& p, int multiplicity, double tol = kPointTolerance);
  const std::vector<SignedPoint>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  bool equals(const SignedPointSet& other, double tol = kPointTolerance) const;

 private:
  std::vector<SignedPoint> atoms_;
};

/// sum_i (delta_omega(g_i) - delta_alpha(g_i)).
SignedPointSet boundary_multiset(const CurveFamily& family);

}  // namespace torlin
