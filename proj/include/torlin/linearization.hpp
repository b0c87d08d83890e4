#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "torlin/currents.hpp"

namespace torlin {

/// Forms on which linearization classes are compared: the test battery plus
/// transverse forms theta (theta(X) = 0) and unit-flow forms eta0 (eta0(X) = 1).
struct Battery {
  int cutoff = 3;
  std::vector<BatteryForm> forms;

  Index dim() const { return forms.empty() ? 0 : forms.front().form.dim(); }
  /// Position of `id`, or npos.
  std::size_t find(const std::string& id) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

std::shared_ptr<const Battery> make_battery(const DirectionVector& alpha, int cutoff = 3);

/// l(y): a twisted path current from the fixed basepoint, evaluated on the battery.
struct LinearizationPoint {
  TorusPoint basepoint;
  TorusPoint endpoint;
  TwistedCurrent representative;
  std::shared_ptr<const Battery> battery;
  /// Aligned with battery->forms.
  std::vector<double> evaluations;

  double value(const std::string& form_id) const;
  const PiecewiseCurve& path() const { return representative.base().source(); }
};

/// Throws EndpointMismatch unless `path` runs from x to y; ResonantMode on resonant battery forms.
LinearizationPoint linearize(const TorusPoint& y, const TorusPoint& x, const PiecewiseCurve& path,
                             const DirectionVector& alpha, std::shared_ptr<const Battery> battery);

/// c(eta) = c_eta on each battery form.
struct GeneratorCurrent {
  std::shared_ptr<const Battery> battery;
  std::vector<double> values;

  double value(const std::string& form_id) const;
};

GeneratorCurrent generator(const DirectionVector& alpha, std::shared_ptr<const Battery> battery);

/// Representative of l(phi^t y): the path of p followed by the flow segment of time t.
LinearizationPoint flow_point(const LinearizationPoint& p, double t, const DirectionVector& alpha);

/// max over the battery of |l(phi^t y)(eta) - l(y)(eta) - c_eta t|.
double check_equivariance(const LinearizationPoint& p, double t, const DirectionVector& alpha);

struct AlbanesePoint {
  Vector coords;
};

/// Periods on dx_1..dx_d reduced mod 1.
AlbanesePoint albanese(const LinearizationPoint& p);

struct SeparationReport {
  enum class Status {
    separated,        // endpoints differ and a battery form tells them apart
    same_class,       // endpoints agree and so do all evaluations
    distinct_class,   // endpoints agree but the paths differ by a nontrivial loop
    inconclusive      // endpoints differ yet no battery form separates them
  };
  Status status = Status::inconclusive;
  std::string form_id;
  FormFamily family = FormFamily::albanese;
  double gap = 0.0;
};

const char* to_string(SeparationReport::Status status);

/// Searches albanese, then transverse, then unit-flow forms, then the rest.
SeparationReport injectivity_probe(const LinearizationPoint& p1, const LinearizationPoint& p2,
                                   double threshold = 1e-9);

}  // namespace torlin
