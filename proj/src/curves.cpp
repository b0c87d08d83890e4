#include "torlin/curves.hpp"

#include <cstring>
#include <stdexcept>
#include <tuple>

namespace torlin {

namespace {

// Junctions created by excision join points that matched within the
// collinearity tolerance, plus rounding from splitting.
constexpr double kJoinTolerance = 1e-10;
// Arc pieces shorter than this are never reported.
constexpr double kMinArcLength = 1e-10;
// Remaining lengths closer than this land on the same segment boundary.
constexpr double kLengthSnap = 1e-11;

Vector point_on(const Segment& s, double u) {
  if (u == 0.0) return s.start.coords;
  if (u == 1.0) return s.start.coords + s.displacement;
  return s.start.coords + u * s.displacement;
}

bool antiparallel(const Vector& a, const Vector& b) {
  return ((a / a.norm()) + (b / b.norm())).lpNorm<Eigen::Infinity>() <= kPointTolerance;
}

Segment shifted(const Segment& s, const Vector& by) { return Segment{LiftPoint(s.start.coords + by), s.displacement, s.kind}; }

CurvePosition curve_start() { return CurvePosition{0, 0.0}; }

CurvePosition curve_end(const PiecewiseCurve& g) { return CurvePosition{g.size() == 0 ? 0 : g.size() - 1, 1.0}; }

double snap_unit(double u, double length) {
  if (u * length <= kLengthSnap) return 0.0;
  if ((1.0 - u) * length <= kLengthSnap) return 1.0;
  return u;
}

}  // namespace

const char* to_string(SegmentKind kind) { return kind == SegmentKind::flow ? "flow" : "transverse"; }

SegmentKind classify_displacement(const Vector& displacement, const DirectionVector& alpha) {
  if (displacement.size() != alpha.dim()) throw DimensionMismatch("segment and direction differ in dimension");
  const double len = displacement.norm();
  if (!(len > 0.0)) throw InvalidSegment("segment displacement must be nonzero");
  const Vector unit = alpha.alpha() / alpha.alpha().norm();
  const Vector normal = displacement - displacement.dot(unit) * unit;
  return normal.norm() / len <= kCollinearTolerance ? SegmentKind::flow : SegmentKind::transverse;
}

void validate_segment(const Segment& s, const DirectionVector& alpha) {
  const SegmentKind actual = classify_displacement(s.displacement, alpha);
  if (actual != s.kind) {
    throw InvalidSegment(std::string("segment declared ") + to_string(s.kind) + " but its displacement is " +
                         (actual == SegmentKind::flow ? "collinear with" : "transverse to") + " the flow");
  }
}

PiecewiseCurve::PiecewiseCurve(std::vector<Segment> segments, double tol) : segments_(std::move(segments)) {
  if (segments_.empty()) throw MalformedInput("use PiecewiseCurve::trivial for the empty curve");
  basepoint_ = segments_.front().start;
  const Index d = basepoint_.dim();
  if (d < 1) throw MalformedInput("curve dimension must be >= 1");
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    if (s.start.dim() != d || s.displacement.size() != d) throw DimensionMismatch("segment dimension differs from curve");
    if (!s.displacement.allFinite() || !s.start.coords.allFinite()) throw MalformedInput("segment has non-finite coordinates");
    if (!(s.displacement.norm() > 0.0)) throw InvalidSegment("segment displacement must be nonzero");
    if (i > 0 && circle_distance(segments_[i - 1].end().coords, s.start.coords) > tol) {
      throw EndpointMismatch("segment " + std::to_string(i) + " does not start where segment " + std::to_string(i - 1) +
                             " ends");
    }
  }
  initial_ = basepoint_.project();
  terminal_ = end_lift().project();
}

PiecewiseCurve PiecewiseCurve::trivial(const LiftPoint& at) {
  PiecewiseCurve g;
  g.basepoint_ = at;
  g.initial_ = g.terminal_ = at.project();
  return g;
}

PiecewiseCurve PiecewiseCurve::from_steps(const LiftPoint& basepoint,
                                          const std::vector<std::pair<Vector, SegmentKind>>& steps) {
  if (steps.empty()) return trivial(basepoint);
  std::vector<Segment> segments;
  segments.reserve(steps.size());
  LiftPoint cursor = basepoint;
  for (const auto& [v, kind] : steps) {
    segments.push_back(Segment{cursor, v, kind});
    cursor = segments.back().end();
  }
  return PiecewiseCurve(std::move(segments));
}

LiftPoint PiecewiseCurve::end_lift() const { return segments_.empty() ? basepoint_ : segments_.back().end(); }

double PiecewiseCurve::length() const {
  double total = 0.0;
  for (const auto& s : segments_) total += s.length();
  return total;
}

bool PiecewiseCurve::same_as(const PiecewiseCurve& other, double tol) const {
  if (size() != other.size() || dim() != other.dim()) return false;
  if (circle_distance(basepoint_.coords, other.basepoint_.coords) > tol) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    const Segment& a = segments_[i];
    const Segment& b = other.segments_[i];
    if (a.kind != b.kind) return false;
    if ((a.displacement - b.displacement).lpNorm<Eigen::Infinity>() > tol) return false;
    if (circle_distance(a.start.coords, b.start.coords) > tol) return false;
  }
  return true;
}

void validate_curve(const PiecewiseCurve& g, const DirectionVector& alpha) {
  if (g.dim() != alpha.dim()) throw DimensionMismatch("curve and direction differ in dimension");
  for (const auto& s : g.segments()) validate_segment(s, alpha);
}

PiecewiseCurve polygon_through(const std::vector<Vector>& vertices, const DirectionVector& alpha) {
  if (vertices.empty()) throw MalformedInput("polygon needs at least one vertex");
  std::vector<std::pair<Vector, SegmentKind>> steps;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    Vector v = vertices[i] - vertices[i - 1];
    if (!(v.norm() > 0.0)) continue;
    const SegmentKind kind = classify_displacement(v, alpha);
    steps.emplace_back(std::move(v), kind);
  }
  return PiecewiseCurve::from_steps(LiftPoint(vertices.front()), steps);
}

PiecewiseCurve concatenate(const PiecewiseCurve& g1, const PiecewiseCurve& g2, double tol) {
  if (g1.dim() != g2.dim()) throw DimensionMismatch("concatenating curves of different dimension");
  if (circle_distance(g1.end_lift().coords, g2.basepoint_lift().coords) > tol) {
    throw EndpointMismatch("end of first curve differs from start of second");
  }
  const Vector shift = round_to_lattice(g1.end_lift().coords - g2.basepoint_lift().coords).cast<double>();
  if (g2.is_trivial()) {
    PiecewiseCurve out = g1;
    out.terminal_ = g2.terminal_;
    return out;
  }
  std::vector<Segment> joined = g1.segments();
  joined.reserve(g1.size() + g2.size());
  for (const auto& s : g2.segments()) joined.push_back(shifted(s, shift));
  PiecewiseCurve out(std::move(joined), tol);
  out.initial_ = g1.initial_;
  out.terminal_ = g2.terminal_;
  return out;
}

PiecewiseCurve reverse(const PiecewiseCurve& g) {
  if (g.is_trivial()) return g;
  std::vector<Segment> out;
  out.reserve(g.size());
  for (auto it = g.segments().rbegin(); it != g.segments().rend(); ++it) out.push_back(it->reversed());
  PiecewiseCurve r(std::move(out));
  r.initial_ = g.terminal_;
  r.terminal_ = g.initial_;
  return r;
}

double CurveFamily::length() const {
  double total = 0.0;
  for (const auto& g : curves) total += g.length();
  return total;
}

std::size_t CurveFamily::segment_count() const {
  std::size_t n = 0;
  for (const auto& g : curves) n += g.size();
  return n;
}

std::uint64_t fingerprint(const CurveFamily& family) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix_bytes = [&h](const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ULL;
    }
  };
  auto mix_vector = [&](const Vector& v) {
    for (Index i = 0; i < v.size(); ++i) {
      const double x = v[i];
      mix_bytes(&x, sizeof x);
    }
  };
  const std::uint64_t count = family.curves.size();
  mix_bytes(&count, sizeof count);
  for (const auto& g : family.curves) {
    const std::uint64_t n = g.size();
    mix_bytes(&n, sizeof n);
    mix_vector(g.basepoint_lift().coords);
    for (const auto& s : g.segments()) {
      mix_vector(s.start.coords);
      mix_vector(s.displacement);
      const int kind = static_cast<int>(s.kind);
      mix_bytes(&kind, sizeof kind);
    }
  }
  return h;
}

namespace {

struct Piece {
  CurvePosition a0, a1;  // on the forward curve, a0 < a1
  CurvePosition b0, b1;  // on the backward curve, b0 < b1; a0 pairs with b1
};

// Antiparallel overlaps of two segments on the torus. One entry per deck
// shift k for which the shifted second segment lies on the first one's line.
void segment_overlaps(const Segment& s1, std::size_t i1, const Segment& s2, std::size_t i2, std::vector<Piece>& out) {
  if (!antiparallel(s1.displacement, s2.displacement)) return;
  const Index d = s1.start.dim();
  const Vector lo1 = s1.start.coords.cwiseMin(s1.end().coords);
  const Vector hi1 = s1.start.coords.cwiseMax(s1.end().coords);
  const Vector lo2 = s2.start.coords.cwiseMin(s2.end().coords);
  const Vector hi2 = s2.start.coords.cwiseMax(s2.end().coords);
  LatticeVector kmin(d), kmax(d);
  for (Index j = 0; j < d; ++j) {
    kmin[j] = static_cast<std::int64_t>(std::ceil(lo1[j] - hi2[j] - kPointTolerance));
    kmax[j] = static_cast<std::int64_t>(std::floor(hi1[j] - lo2[j] + kPointTolerance));
    if (kmin[j] > kmax[j]) return;
  }
  const double len1 = s1.length();
  const double v1sq = s1.displacement.squaredNorm();
  const double mu = s2.length() / len1;
  LatticeVector k = kmin;
  while (true) {
    const Vector q = s2.start.coords + k.cast<double>() - s1.start.coords;
    const double sigma = q.dot(s1.displacement) / v1sq;
    const Vector residual = q - sigma * s1.displacement;
    if (residual.lpNorm<Eigen::Infinity>() <= kPointTolerance) {
      // s2 runs along s1's parameter from sigma down to sigma - mu.
      const double lo = std::max(0.0, sigma - mu);
      const double hi = std::min(1.0, sigma);
      if ((hi - lo) * len1 > kMinArcLength) {
        const double len2 = s2.length();
        Piece p;
        p.a0 = {i1, snap_unit(lo, len1)};
        p.a1 = {i1, snap_unit(hi, len1)};
        p.b0 = {i2, snap_unit(std::clamp((sigma - hi) / mu, 0.0, 1.0), len2)};
        p.b1 = {i2, snap_unit(std::clamp((sigma - lo) / mu, 0.0, 1.0), len2)};
        out.push_back(p);
      }
    }
    Index j = 0;
    while (j < d) {
      if (k[j] < kmax[j]) {
        ++k[j];
        break;
      }
      k[j] = kmin[j];
      ++j;
    }
    if (j == d) break;
  }
}

// Walks the forward occurrence ahead and the backward occurrence back while
// they keep tracing the same points.
void extend_ahead(const std::vector<Segment>& fwd, const std::vector<Segment>& bwd, bool same_curve, CurvePosition& a,
                  CurvePosition& b) {
  while (true) {
    std::size_t ai = a.segment, bi = b.segment;
    double au = a.u, bu = b.u;
    if (au >= 1.0) {
      if (ai + 1 >= fwd.size()) return;
      ++ai;
      au = 0.0;
    }
    if (bu <= 0.0) {
      if (bi == 0) return;
      --bi;
      bu = 1.0;
    }
    if (same_curve && ai >= bi) return;
    const Segment& sa = fwd[ai];
    const Segment& sb = bwd[bi];
    if (!antiparallel(sa.displacement, sb.displacement)) return;
    if (circle_distance(point_on(sa, au), point_on(sb, bu)) > kJoinTolerance) return;
    const double la = sa.length(), lb = sb.length();
    const double rem_a = (1.0 - au) * la, rem_b = bu * lb;
    if (std::abs(rem_a - rem_b) <= kLengthSnap) {
      au = 1.0;
      bu = 0.0;
    } else if (rem_a < rem_b) {
      au = 1.0;
      bu = snap_unit(bu - rem_a / lb, lb);
    } else {
      bu = 0.0;
      au = snap_unit(au + rem_b / la, la);
    }
    a = {ai, au};
    b = {bi, bu};
  }
}

// Mirror of extend_ahead: forward occurrence moves back, backward one ahead.
void extend_behind(const std::vector<Segment>& fwd, const std::vector<Segment>& bwd, bool same_curve, CurvePosition& a,
                   CurvePosition& b) {
  while (true) {
    std::size_t ai = a.segment, bi = b.segment;
    double au = a.u, bu = b.u;
    if (au <= 0.0) {
      if (ai == 0) return;
      --ai;
      au = 1.0;
    }
    if (bu >= 1.0) {
      if (bi + 1 >= bwd.size()) return;
      ++bi;
      bu = 0.0;
    }
    if (same_curve && ai >= bi) return;
    const Segment& sa = fwd[ai];
    const Segment& sb = bwd[bi];
    if (!antiparallel(sa.displacement, sb.displacement)) return;
    if (circle_distance(point_on(sa, au), point_on(sb, bu)) > kJoinTolerance) return;
    const double la = sa.length(), lb = sb.length();
    const double rem_a = au * la, rem_b = (1.0 - bu) * lb;
    if (std::abs(rem_a - rem_b) <= kLengthSnap) {
      au = 0.0;
      bu = 1.0;
    } else if (rem_a < rem_b) {
      au = 0.0;
      bu = snap_unit(bu + rem_a / lb, lb);
    } else {
      bu = 1.0;
      au = snap_unit(au - rem_b / la, la);
    }
    a = {ai, au};
    b = {bi, bu};
  }
}

double span_length(const PiecewiseCurve& g, CurvePosition from, CurvePosition to) {
  double total = 0.0;
  for (std::size_t s = from.segment; s <= to.segment && s < g.size(); ++s) {
    const double ua = (s == from.segment) ? from.u : 0.0;
    const double ub = (s == to.segment) ? to.u : 1.0;
    if (ub > ua) total += (ub - ua) * g.segments()[s].length();
  }
  return total;
}

auto tie_key(const RetracedArcLocation& loc) {
  return std::make_tuple(loc.forward.curve, loc.forward.begin.segment, loc.forward.begin.u, loc.backward.curve,
                         loc.backward.begin.segment, loc.backward.begin.u);
}

}  // namespace

std::optional<RetracedArcLocation> find_retraced_arc(const CurveFamily& family) {
  std::optional<RetracedArcLocation> best;
  std::vector<Piece> pieces;
  const auto& curves = family.curves;
  for (std::size_t ca = 0; ca < curves.size(); ++ca) {
    const auto& fa = curves[ca].segments();
    for (std::size_t ia = 0; ia < fa.size(); ++ia) {
      for (std::size_t cb = ca; cb < curves.size(); ++cb) {
        const auto& fb = curves[cb].segments();
        for (std::size_t ib = (cb == ca ? ia + 1 : 0); ib < fb.size(); ++ib) {
          pieces.clear();
          segment_overlaps(fa[ia], ia, fb[ib], ib, pieces);
          for (Piece p : pieces) {
            const bool same = (ca == cb);
            extend_ahead(fa, fb, same, p.a1, p.b0);
            extend_behind(fa, fb, same, p.a0, p.b1);
            RetracedArcLocation loc;
            loc.forward = ArcSpan{ca, p.a0, p.a1};
            loc.backward = ArcSpan{cb, p.b0, p.b1};
            loc.length = span_length(curves[ca], p.a0, p.a1);
            if (!best) {
              best = loc;
              continue;
            }
            const double scale = std::max(1.0, std::max(loc.length, best->length));
            if (loc.length > best->length + kPointTolerance * scale) {
              best = loc;
            } else if (std::abs(loc.length - best->length) <= kPointTolerance * scale && tie_key(loc) < tie_key(*best)) {
              best = loc;
            }
          }
        }
      }
    }
  }
  if (best) best->family_fingerprint = fingerprint(family);
  return best;
}

PiecewiseCurve slice(const PiecewiseCurve& g, CurvePosition from, CurvePosition to) {
  if (g.is_trivial()) return g;
  if (from.segment >= g.size() || to.segment >= g.size()) throw std::out_of_range("curve position out of range");
  if (to < from) throw std::invalid_argument("slice bounds out of order");
  std::vector<Segment> pieces;
  for (std::size_t s = from.segment; s <= to.segment; ++s) {
    const Segment& seg = g.segments()[s];
    const double ua = (s == from.segment) ? from.u : 0.0;
    const double ub = (s == to.segment) ? to.u : 1.0;
    if (!(ub > ua)) continue;
    if (ua == 0.0 && ub == 1.0) {
      pieces.push_back(seg);
    } else {
      pieces.push_back(Segment{LiftPoint(point_on(seg, ua)), (ub - ua) * seg.displacement, seg.kind});
    }
  }
  const bool from_start = from.segment == 0 && from.u == 0.0;
  const bool to_end = to.segment + 1 == g.size() && to.u == 1.0;
  if (pieces.empty()) {
    PiecewiseCurve point = PiecewiseCurve::trivial(LiftPoint(point_on(g.segments()[from.segment], from.u)));
    if (from_start) point.initial_ = point.terminal_ = g.initial_;
    if (to_end) point.initial_ = point.terminal_ = g.terminal_;
    return point;
  }
  PiecewiseCurve out(std::move(pieces), kJoinTolerance);
  if (from_start) out.initial_ = g.initial_;
  if (to_end) out.terminal_ = g.terminal_;
  return out;
}

CurveFamily simple_excision(const CurveFamily& family, const RetracedArcLocation& loc) {
  if (loc.family_fingerprint != fingerprint(family)) throw StaleLocation("family changed since the arc was located");
  const std::size_t ca = loc.forward.curve;
  const std::size_t cb = loc.backward.curve;
  if (ca >= family.curves.size() || cb >= family.curves.size()) throw StaleLocation("arc refers to a missing curve");

  std::vector<PiecewiseCurve> produced;
  auto join = [](std::initializer_list<PiecewiseCurve> parts) {
    auto it = parts.begin();
    PiecewiseCurve acc = *it;
    for (++it; it != parts.end(); ++it) acc = concatenate(acc, *it, kJoinTolerance);
    return acc;
  };

  if (ca == cb) {
    const PiecewiseCurve& g = family.curves[ca];
    const PiecewiseCurve a = slice(g, curve_start(), loc.forward.begin);
    const PiecewiseCurve b = slice(g, loc.forward.end, loc.backward.begin);
    const PiecewiseCurve c = slice(g, loc.backward.end, curve_end(g));
    produced.push_back(join({a, c}));
    produced.push_back(b);
  } else {
    const PiecewiseCurve& g1 = family.curves[ca];
    const PiecewiseCurve& g2 = family.curves[cb];
    const PiecewiseCurve a = slice(g1, curve_start(), loc.forward.begin);
    const PiecewiseCurve b = slice(g1, loc.forward.end, curve_end(g1));
    const PiecewiseCurve c = slice(g2, curve_start(), loc.backward.begin);
    const PiecewiseCurve d = slice(g2, loc.backward.end, curve_end(g2));
    if (g2.is_closed(kJoinTolerance)) {
      produced.push_back(join({a, d, c, b}));
    } else if (g1.is_closed(kJoinTolerance)) {
      // Same rule with the roles swapped so the closed curve is absorbed
      // and no new open curve appears.
      produced.push_back(join({c, b, a, d}));
    } else {
      produced.push_back(join({a, d}));
      produced.push_back(join({c, b}));
    }
  }

  CurveFamily out;
  for (std::size_t i = 0; i < family.curves.size(); ++i) {
    if (i == ca) {
      for (auto& g : produced) {
        if (!g.is_trivial()) out.curves.push_back(std::move(g));
      }
    } else if (i != cb) {
      out.curves.push_back(family.curves[i]);
    }
  }
  return out;
}

CurveFamily maximal_excision(const CurveFamily& family, std::vector<RetracedArcLocation>* log) {
  CurveFamily current = family;
  while (auto loc = find_retraced_arc(current)) {
    const double before = current.length();
    current = simple_excision(current, *loc);
    if (!(current.length() < before)) throw std::logic_error("excision failed to shorten the family");
    if (log != nullptr) log->push_back(*loc);
  }
  return current;
}

void SignedPointSet::add(const TorusPoint& p, int multiplicity, double tol) {
  if (multiplicity == 0) return;
  for (auto it = atoms_.begin(); it != atoms_.end(); ++it) {
    if (same_point(it->point, p, tol)) {
      it->multiplicity += multiplicity;
      if (it->multiplicity == 0) atoms_.erase(it);
      return;
    }
  }
  atoms_.push_back(SignedPoint{p, multiplicity});
}

bool SignedPointSet::equals(const SignedPointSet& other, double tol) const {
  if (atoms_.size() != other.atoms_.size()) return false;
  for (const auto& a : atoms_) {
    const bool matched = std::any_of(other.atoms_.begin(), other.atoms_.end(), [&](const SignedPoint& b) {
      return b.multiplicity == a.multiplicity && same_point(a.point, b.point, tol);
    });
    if (!matched) return false;
  }
  return true;
}

SignedPointSet boundary_multiset(const CurveFamily& family) {
  SignedPointSet out;
  for (const auto& g : family.curves) {
    out.add(g.terminal(), +1);
    out.add(g.initial(), -1);
  }
  return out;
}

}  // namespace torlin
