#include "torlin/linearization.hpp"

namespace torlin {

std::size_t Battery::find(const std::string& id) const {
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].id == id) return i;
  }
  return npos;
}

std::shared_ptr<const Battery> make_battery(const DirectionVector& alpha, int cutoff) {
  const Index d = alpha.dim();
  auto battery = std::make_shared<Battery>();
  battery->cutoff = cutoff;
  battery->forms = test_battery(d, cutoff);

  std::vector<std::pair<std::string, TrigPoly>> modulators;
  modulators.emplace_back("", TrigPoly::constant(d, 1.0));
  for (const auto& n : canonical_modes(d, cutoff)) {
    modulators.emplace_back("cos" + lattice_tag(n), TrigPoly::cosine(n));
    modulators.emplace_back("sin" + lattice_tag(n), TrigPoly::sine(n));
  }

  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      if (alpha[i] == 0.0 && alpha[j] == 0.0) continue;
      // f (alpha_i dx_j - alpha_j dx_i) annihilates X.
      const std::string tag = "theta[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
      for (const auto& [head, f] : modulators) {
        OneForm theta = OneForm::modulated(f * alpha[i], j) - OneForm::modulated(f * alpha[j], i);
        battery->forms.push_back({tag + head, std::move(theta), FormFamily::transverse});
      }
    }
  }

  OneForm dual(d);
  const double norm2 = alpha.alpha().squaredNorm();
  for (Index j = 0; j < d; ++j) {
    if (alpha[j] != 0.0) dual += OneForm::coordinate(d, j) * (alpha[j] / norm2);
  }
  battery->forms.push_back({"eta0", dual, FormFamily::unit_flow});
  for (Index j = 0; j < d; ++j) {
    if (alpha[j] == 0.0) continue;
    battery->forms.push_back(
        {"eta0dx" + std::to_string(j + 1), OneForm::coordinate(d, j) * (1.0 / alpha[j]), FormFamily::unit_flow});
  }
  return battery;
}

double LinearizationPoint::value(const std::string& form_id) const {
  const std::size_t i = battery->find(form_id);
  if (i == Battery::npos) throw std::out_of_range("no battery form '" + form_id + "'");
  return evaluations[i];
}

LinearizationPoint linearize(const TorusPoint& y, const TorusPoint& x, const PiecewiseCurve& path,
                             const DirectionVector& alpha, std::shared_ptr<const Battery> battery) {
  if (!battery) throw std::invalid_argument("linearize needs a battery");
  if (path.dim() != alpha.dim() || x.dim() != alpha.dim() || y.dim() != alpha.dim() || battery->dim() != alpha.dim()) {
    throw DimensionMismatch("linearization inputs differ in dimension");
  }
  if (!same_point(path.initial(), x)) throw EndpointMismatch("path does not start at the basepoint");
  if (!same_point(path.terminal(), y)) throw EndpointMismatch("path does not end at the target point");

  LinearizationPoint p;
  p.basepoint = x;
  p.endpoint = y;
  p.representative = twist(CurrentHandle(path), alpha);
  p.battery = std::move(battery);
  p.evaluations.reserve(p.battery->forms.size());
  for (const auto& f : p.battery->forms) p.evaluations.push_back(evaluate_twisted(p.representative, f.form));
  return p;
}

double GeneratorCurrent::value(const std::string& form_id) const {
  const std::size_t i = battery->find(form_id);
  if (i == Battery::npos) throw std::out_of_range("no battery form '" + form_id + "'");
  return values[i];
}

GeneratorCurrent generator(const DirectionVector& alpha, std::shared_ptr<const Battery> battery) {
  if (!battery) throw std::invalid_argument("generator needs a battery");
  GeneratorCurrent c;
  c.battery = std::move(battery);
  c.values.reserve(c.battery->forms.size());
  for (const auto& f : c.battery->forms) c.values.push_back(solve_for_form(f.form, alpha).c);
  return c;
}

LinearizationPoint flow_point(const LinearizationPoint& p, double t, const DirectionVector& alpha) {
  PiecewiseCurve path = p.path();
  const TorusPoint y = flow(p.endpoint, t, alpha);
  if (t != 0.0) {
    const Segment orbit{path.end_lift(), t * alpha.alpha(), SegmentKind::flow};
    path = concatenate(path, PiecewiseCurve({orbit}));
  }
  return linearize(y, p.basepoint, path, alpha, p.battery);
}

double check_equivariance(const LinearizationPoint& p, double t, const DirectionVector& alpha) {
  const LinearizationPoint q = flow_point(p, t, alpha);
  double gap = 0.0;
  for (std::size_t i = 0; i < p.battery->forms.size(); ++i) {
    const double c = p.representative.solution_for(p.battery->forms[i].form).c;
    gap = std::max(gap, std::abs(q.evaluations[i] - p.evaluations[i] - c * t));
  }
  return gap;
}

AlbanesePoint albanese(const LinearizationPoint& p) {
  const Index d = p.endpoint.dim();
  Vector periods(d);
  for (Index j = 0; j < d; ++j) periods[j] = p.value("dx" + std::to_string(j + 1));
  return AlbanesePoint{reduce_mod_one(periods)};
}

const char* to_string(SeparationReport::Status status) {
  switch (status) {
    case SeparationReport::Status::separated:
      return "separated";
    case SeparationReport::Status::same_class:
      return "same_class";
    case SeparationReport::Status::distinct_class:
      return "distinct_class";
    case SeparationReport::Status::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

SeparationReport injectivity_probe(const LinearizationPoint& p1, const LinearizationPoint& p2, double threshold) {
  if (!same_point(p1.basepoint, p2.basepoint)) throw BasepointMismatch("linearization points use different basepoints");
  if (p1.battery != p2.battery && (p1.battery->forms.size() != p2.battery->forms.size() || p1.battery->cutoff != p2.battery->cutoff)) {
    throw MalformedInput("linearization points were evaluated on different batteries");
  }
  const auto& forms = p1.battery->forms;
  SeparationReport report;
  for (FormFamily family : {FormFamily::albanese, FormFamily::transverse, FormFamily::unit_flow, FormFamily::modulated}) {
    for (std::size_t i = 0; i < forms.size(); ++i) {
      if (forms[i].family != family) continue;
      const double gap = std::abs(p1.evaluations[i] - p2.evaluations[i]);
      if (gap > threshold) {
        report.form_id = forms[i].id;
        report.family = family;
        report.gap = gap;
        report.status = same_point(p1.endpoint, p2.endpoint) ? SeparationReport::Status::distinct_class
                                                             : SeparationReport::Status::separated;
        return report;
      }
    }
  }
  report.status = same_point(p1.endpoint, p2.endpoint) ? SeparationReport::Status::same_class
                                                       : SeparationReport::Status::inconclusive;
  return report;
}

}  // namespace torlin
