#pragma once

#include <random>
#include <vector>

#include "torlin/curves.hpp"
#include "torlin/spectral.hpp"

namespace torlin::testing {

using Rng = std::mt19937_64;

inline const std::string kGoldenDigits = "1.6180339887498948482045868343656381177203";

DirectionVector golden_direction();

double uniform(Rng& rng, double lo, double hi);
Vector uniform_vector(Rng& rng, Index d, double lo, double hi);
LatticeVector random_mode(Rng& rng, Index d, int max_mode);

/// Mean plus `count` random cosine/sine pairs with modes in the sup ball.
TrigPoly random_trig_poly(Rng& rng, Index d, int max_mode, int count);
OneForm random_one_form(Rng& rng, Index d, int max_mode, int count);

/// Random step: transverse, or a flow step t alpha with probability `flow_chance`.
std::pair<Vector, SegmentKind> random_step(Rng& rng, const DirectionVector& alpha, double flow_chance = 0.25);

/// Polygon from a lift of x to a lift of y through `corners` random vertices.
PiecewiseCurve random_path(Rng& rng, const TorusPoint& x, const TorusPoint& y, const DirectionVector& alpha,
                           int corners = 2);

/// Closed polygon at x, possibly winding, with some flow steps.
PiecewiseCurve random_loop(Rng& rng, const TorusPoint& x, const DirectionVector& alpha);

/// Open polygon with random steps.
PiecewiseCurve random_open_curve(Rng& rng, const DirectionVector& alpha);

/// Up to `max_curves` curves of at most `max_segments` segments, with planted
/// retraced arcs inside curves and across pairs of curves.
CurveFamily planted_family(Rng& rng, const DirectionVector& alpha, int max_curves = 6, int max_segments = 12);

}  // namespace torlin::testing
