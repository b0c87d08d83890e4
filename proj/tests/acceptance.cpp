#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "testing/generators.hpp"
#include "testing/oracles.hpp"
#include "torlin/errors.hpp"
#include "torlin/linearization.hpp"

namespace {

using namespace torlin;
using testing::Rng;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, pattern, a, b, c);
  return buffer;
}

TorusPoint random_point(Rng& rng) { return TorusPoint(testing::uniform_vector(rng, 2, 0.0, 1.0)); }

Outcome solver_round_trip() {
  Rng rng(1001);
  const DirectionVector alpha = testing::golden_direction();
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const TrigPoly f = testing::random_trig_poly(rng, 2, 8, 12);
    const CohomologySolution sol = solve_cohomological(f, alpha);
    const TrigPoly back = lie_derivative(sol.h, alpha) + TrigPoly::constant(2, sol.c);
    worst = std::max(worst, testing::coefficient_gap(back, f));
  }
  return {worst < 1e-12, fmt("200 polys, max relative coefficient error %.3e", worst)};
}

Outcome resonance_obstruction() {
  const DirectionVector alpha = DirectionVector::from_decimal({"1", "0.5"});
  const LatticeVector n = (LatticeVector(2) << 1, -2).finished();
  const TrigPoly spread = TrigPoly::cosine((LatticeVector(2) << 1, 1).finished(), 0.1) +
                          TrigPoly::sine((LatticeVector(2) << 0, 1).finished(), 0.1) + TrigPoly::constant(2, 0.3);
  bool raised = false;
  try {
    solve_cohomological(spread + TrigPoly::cosine(n, 2.0) + TrigPoly::sine(n, 1.0), alpha);
  } catch (const ResonantMode&) {
    raised = true;
  }
  bool solved = true;
  try {
    const CohomologySolution sol = solve_cohomological(spread, alpha);
    solved = testing::coefficient_gap(lie_derivative(sol.h, alpha) + TrigPoly::constant(2, sol.c), spread) < 1e-12;
  } catch (const Error&) {
    solved = false;
  }
  return {raised && solved, std::string("ResonantMode on (1,-2): ") + (raised ? "raised" : "missing") +
                                ", zeroed mode: " + (solved ? "solved" : "failed")};
}

Outcome diophantine_certificate() {
  const DirectionVector alpha = testing::golden_direction();
  const DiophantineCertificate cert = certify_diophantine(alpha, 1.0, 10000);
  const long double phi = 1.6180339887498948482045868343656381177203L;
  const double oracle = testing::brute_force_cmin({1.0L, phi}, 1.0, 10000);
  const bool agree = std::abs(cert.c_min - oracle) <= 1e-9 * oracle;

  const LiouvilleVector lv = liouville_vector(2, {1, 2, 6, 24});
  const DirectionVector liouville = lv.direction.with_resonance_tolerance(1e-30);
  std::vector<double> amps;
  for (const Convergent& conv : lv.convergents) {
    const auto mode = conv.mode();
    if (!mode || liouville.is_resonant(*mode)) continue;
    amps.push_back(solve_cohomological(TrigPoly::cosine(*mode), liouville).amplification);
  }
  double weakest = amps.size() >= 2 ? 1e300 : 0.0;
  for (std::size_t k = 1; k < amps.size(); ++k) weakest = std::min(weakest, amps[k] / amps[k - 1]);
  const bool pass = cert.c_min > 0.1 && agree && amps.size() >= 2 && weakest > 1e3;
  std::string growth;
  for (double a : amps) growth += fmt(" %.6g", a);
  return {pass, fmt("c_min %.15g (brute force %.15g), ", cert.c_min, oracle) + "amplifications" + growth +
                    fmt(", smallest growth factor %.6g", weakest)};
}

Outcome excision_suite() {
  Rng rng(1004);
  const DirectionVector alpha = testing::golden_direction();
  const auto battery = test_battery(2, 3);
  int failures = 0;
  std::size_t excised = 0;
  for (int i = 0; i < 100; ++i) {
    const CurveFamily family = testing::planted_family(rng, alpha);
    std::vector<RetracedArcLocation> log;
    const CurveFamily reduced = maximal_excision(family, &log);
    excised += log.size();
    const bool ok = !find_retraced_arc(reduced) &&
                    boundary_multiset(reduced).equals(boundary_multiset(family), 0.0) &&
                    broadly_equivalent(reduced, family, battery, 1e-9);
    failures += ok ? 0 : 1;
  }
  return {failures == 0, fmt("100 families, %g arcs excised, %g failures", static_cast<double>(excised), failures)};
}

Outcome twist_identities() {
  Rng rng(1005);
  const DirectionVector alpha = testing::golden_direction();
  const auto battery = test_battery(2, 3);
  double loop_gap = 0.0;
  for (int i = 0; i < 100; ++i) {
    const PiecewiseCurve loop = testing::random_loop(rng, random_point(rng), alpha);
    const TwistedCurrent lt = twist(CurrentHandle(loop), alpha);
    for (const auto& f : battery) loop_gap = std::max(loop_gap, std::abs(evaluate_twisted(lt, f.form) - integrate(loop, f.form)));
  }
  double exact_gap = 0.0;
  for (int i = 0; i < 100; ++i) {
    const PiecewiseCurve g = testing::random_open_curve(rng, alpha);
    const TrigPoly f = testing::random_trig_poly(rng, 2, 4, 5);
    exact_gap = std::max(exact_gap, std::abs(evaluate_twisted(twist(CurrentHandle(g), alpha), exterior_derivative(f))));
  }
  return {loop_gap < 1e-9 && exact_gap < 1e-9, fmt("loops max gap %.3e, exact forms max value %.3e", loop_gap, exact_gap)};
}

Outcome equivariance() {
  Rng rng(1006);
  const DirectionVector alpha = testing::golden_direction();
  const auto battery = make_battery(alpha);
  const TorusPoint x(Vector::Zero(2));
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const TorusPoint y = random_point(rng);
    const LinearizationPoint p = linearize(y, x, testing::random_path(rng, x, y, alpha), alpha, battery);
    worst = std::max(worst, check_equivariance(p, testing::uniform(rng, -10.0, 10.0), alpha));
  }
  return {worst < 1e-9, fmt("100 samples, max battery gap %.3e", worst)};
}

Outcome albanese_semi_conjugacy() {
  Rng rng(1007);
  const DirectionVector alpha = testing::golden_direction();
  const auto battery = make_battery(alpha);
  const TorusPoint x(Vector::Zero(2));
  double worst = 0.0, loop_worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const TorusPoint y = random_point(rng);
    const Vector expected = reduce_mod_one(Vector(y.coords - x.coords));
    for (int k = 0; k < 2; ++k) {
      const LinearizationPoint p = linearize(y, x, testing::random_path(rng, x, y, alpha), alpha, battery);
      const Vector a = albanese(p).coords;
      for (Index j = 0; j < 2; ++j) worst = std::max(worst, circle_distance(Vector::Constant(1, a[j]), Vector::Constant(1, expected[j])));
      const PiecewiseCurve looped = concatenate(p.path(), testing::random_loop(rng, y, alpha));
      const Vector b = albanese(linearize(y, x, looped, alpha, battery)).coords;
      loop_worst = std::max(loop_worst, circle_distance(a, b));
    }
  }
  return {worst < 1e-9 && loop_worst < 1e-9,
          fmt("200 paths, max coordinate error %.3e, loop-appended drift %.3e", worst, loop_worst)};
}

Outcome injectivity_probes() {
  Rng rng(1008);
  const DirectionVector alpha = testing::golden_direction();
  const auto battery = make_battery(alpha);
  const TorusPoint x(Vector::Zero(2));
  int pairs = 0, rejected = 0, failures = 0;
  double smallest = 1e300;
  while (pairs < 100) {
    const TorusPoint y1 = random_point(rng), y2 = random_point(rng);
    if (circle_distance(y1.coords, y2.coords) < 1e-6) {
      ++rejected;
      continue;
    }
    ++pairs;
    const LinearizationPoint p1 = linearize(y1, x, testing::random_path(rng, x, y1, alpha), alpha, battery);
    const LinearizationPoint p2 = linearize(y2, x, testing::random_path(rng, x, y2, alpha), alpha, battery);
    const SeparationReport r = injectivity_probe(p1, p2);
    if (r.status != SeparationReport::Status::separated || !(r.gap > 1e-9)) ++failures;
    smallest = std::min(smallest, r.gap);
  }
  return {failures == 0, fmt("100 pairs (%g rejected), %g unseparated, smallest gap %.3e", rejected, failures, smallest)};
}

Outcome stokes() {
  Rng rng(1009);
  const DirectionVector alpha = testing::golden_direction();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const PiecewiseCurve g = testing::random_open_curve(rng, alpha);
    const TrigPoly f = testing::random_trig_poly(rng, 2, 6, 6);
    const double lhs = evaluate(CurrentHandle(g), exterior_derivative(f));
    worst = std::max(worst, std::abs(lhs - (f(g.end_lift().coords) - f(g.basepoint_lift().coords))));
  }
  return {worst < 1e-10, fmt("100 pairs, max error %.3e", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"solver round trip", solver_round_trip},
      {"resonance obstruction", resonance_obstruction},
      {"diophantine certificate", diophantine_certificate},
      {"excision suite", excision_suite},
      {"twist identities", twist_identities},
      {"equivariance", equivariance},
      {"albanese semi-conjugacy", albanese_semi_conjugacy},
      {"injectivity probes", injectivity_probes},
      {"stokes consistency", stokes},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), seconds);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
