#include "torlin/cli.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "torlin/io.hpp"
#include "torlin/linearization.hpp"

namespace torlin::cli {

using io::json;

namespace {

struct Output {
  std::string text;
  int status = 0;
  std::string error;
};

std::string number(double x) { return io::format_decimal(x); }

json error_json(const std::string& kind, const std::string& message, const LatticeVector* mode) {
  json rec{{"error", kind}, {"message", message}};
  if (mode != nullptr) rec["mode"] = io::to_json(*mode);
  return rec;
}

void require_file(const std::filesystem::path& path, const char* flag) {
  if (path.empty()) throw MalformedInput(std::string("missing required flag ") + flag);
  if (!std::filesystem::is_regular_file(path)) throw MalformedInput("input file '" + path.string() + "' does not exist");
}

void validate(const ExperimentConfig& c) {
  const auto& known = commands();
  if (std::find(known.begin(), known.end(), c.command) == known.end()) {
    throw MalformedInput("unknown command '" + c.command + "'");
  }
  if (c.cutoff < 1) throw MalformedInput("cutoff must be >= 1");
  if (c.samples < 1) throw MalformedInput("samples must be >= 1");
  if (c.radius && *c.radius < 1) throw MalformedInput("radius must be >= 1");
  if (c.eps_res && !(*c.eps_res > 0.0)) throw MalformedInput("eps-res must be positive");
  for (const auto* p : {&c.alpha_path, &c.function_path, &c.form_path, &c.curve_path}) {
    if (!p->empty() && !std::filesystem::is_regular_file(*p)) {
      throw MalformedInput("input file '" + p->string() + "' does not exist");
    }
  }
}

io::DirectionSpec load_direction(const ExperimentConfig& c) {
  require_file(c.alpha_path, "--alpha");
  io::DirectionSpec spec = io::parse_direction(io::read_json(c.alpha_path));
  if (c.eps_res) spec.alpha = spec.alpha.with_resonance_tolerance(*c.eps_res);
  return spec;
}

TorusPoint basepoint(const ExperimentConfig& c, Index d) {
  if (c.basepoint.empty()) return TorusPoint(Vector::Zero(d));
  if (static_cast<Index>(c.basepoint.size()) != d) throw MalformedInput("basepoint dimension differs from alpha");
  return TorusPoint(Eigen::Map<const Vector>(c.basepoint.data(), d));
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  Vector uniform_vector(Index d, double lo, double hi) {
    Vector v(d);
    for (Index i = 0; i < d; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  /// Polygon from the lift of x to a lift of y with one or two random corners.
  PiecewiseCurve path(const TorusPoint& x, const TorusPoint& y, const DirectionVector& alpha) {
    const Index d = x.dim();
    std::vector<Vector> vertices{x.coords};
    const int corners = 1 + static_cast<int>(rng_() % 2);
    for (int i = 0; i < corners; ++i) vertices.push_back(vertices.back() + uniform_vector(d, -1.0, 1.0));
    Vector end = y.coords;
    for (Index i = 0; i < d; ++i) end[i] += static_cast<double>(static_cast<int>(rng_() % 3) - 1);
    vertices.push_back(end);
    return polygon_through(vertices, alpha);
  }

 private:
  std::mt19937_64 rng_;
};

Output diophantine_check(const ExperimentConfig& c, Format fmt) {
  const io::DirectionSpec spec = load_direction(c);
  const std::int64_t radius = c.radius.value_or(spec.radius.value_or(100));
  const double tau = c.tau.value_or(spec.tau.value_or(1.0));
  const std::vector<LatticeVector> found = find_resonances(spec.alpha, radius);
  std::ostringstream os;
  if (!found.empty()) {
    if (fmt == Format::csv) {
      os << "mode,divisor\n";
      for (const auto& n : found) os << '"' << io::to_json(n).dump() << "\"," << number(spec.alpha.divisor(n)) << '\n';
    } else {
      json list = json::array();
      for (const auto& n : found) list.push_back(io::to_json(n));
      os << json{{"status", "resonant"}, {"radius", radius}, {"resonances", list}}.dump(2) << '\n';
    }
    const ResonanceFound e(found.front());
    return {os.str(), 1, error_json(e.kind(), e.what(), &e.mode()).dump()};
  }
  const DiophantineCertificate cert = certify_diophantine(spec.alpha, tau, radius);
  if (fmt == Format::csv) {
    os << "tau,radius,c_min,argmin,norm\n"
       << number(cert.tau) << ',' << cert.radius << ',' << number(cert.c_min) << ",\"" << io::to_json(cert.argmin).dump()
       << "\"," << cert.norm_kind << '\n';
  } else {
    os << json{{"status", "certified"},
               {"tau", cert.tau},
               {"radius", cert.radius},
               {"c_min", cert.c_min},
               {"argmin", io::to_json(cert.argmin)},
               {"norm", cert.norm_kind}}
              .dump(2)
       << '\n';
  }
  return {os.str(), 0, {}};
}

Output solve_cohomology(const ExperimentConfig& c, Format fmt) {
  const io::DirectionSpec spec = load_direction(c);
  CohomologySolution sol;
  if (!c.function_path.empty()) {
    const TrigPoly f = io::parse_trig_poly(io::read_json(c.function_path));
    if (f.dim() != spec.alpha.dim()) throw MalformedInput("function dimension differs from alpha");
    sol = solve_cohomological(f, spec.alpha);
  } else if (!c.form_path.empty()) {
    const OneForm eta = io::parse_one_form(io::read_json(c.form_path));
    if (eta.dim() != spec.alpha.dim()) throw MalformedInput("form dimension differs from alpha");
    sol = solve_for_form(eta, spec.alpha);
  } else {
    throw MalformedInput("solve-cohomology needs --function or --form");
  }
  std::ostringstream os;
  if (fmt == Format::csv) {
    os << "n,re,im\n";
    for (const auto& [n, coeff] : sol.h.modes()) {
      if (canonical_sign(n) != n) continue;
      os << '"' << io::to_json(n).dump() << "\"," << number(coeff.real()) << ',' << number(coeff.imag()) << '\n';
    }
  } else {
    os << json{{"c", sol.c}, {"amplification", sol.amplification}, {"h", io::to_json(sol.h)}}.dump(2) << '\n';
  }
  return {os.str(), 0, {}};
}

json span_json(const ArcSpan& s) {
  return json{{"curve", s.curve},
              {"begin", {{"segment", s.begin.segment}, {"u", s.begin.u}}},
              {"end", {{"segment", s.end.segment}, {"u", s.end.u}}}};
}

Output excise(const ExperimentConfig& c, Format fmt) {
  require_file(c.curve_path, "--curve");
  std::optional<io::DirectionSpec> spec;
  if (!c.alpha_path.empty()) spec = load_direction(c);
  const CurveFamily family = io::parse_family(io::read_json(c.curve_path), spec ? &spec->alpha : nullptr);
  std::vector<RetracedArcLocation> log;
  const CurveFamily reduced = maximal_excision(family, &log);
  const bool boundary_kept = boundary_multiset(family).equals(boundary_multiset(reduced));
  double gap = 0.0;
  if (!family.curves.empty()) {
    for (const auto& f : test_battery(family.curves.front().dim(), c.cutoff)) {
      gap = std::max(gap, std::abs(integrate(family, f.form) - integrate(reduced, f.form)));
    }
  }
  std::ostringstream os;
  if (fmt == Format::csv) {
    os << "step,length,forward_curve,backward_curve\n";
    for (std::size_t i = 0; i < log.size(); ++i) {
      os << i << ',' << number(log[i].length) << ',' << log[i].forward.curve << ',' << log[i].backward.curve << '\n';
    }
  } else {
    json steps = json::array();
    for (const auto& loc : log) {
      steps.push_back({{"length", loc.length}, {"forward", span_json(loc.forward)}, {"backward", span_json(loc.backward)}});
    }
    os << json{{"input_length", family.length()},
               {"output_length", reduced.length()},
               {"excisions", steps},
               {"boundary_preserved", boundary_kept},
               {"broad_equivalence_gap", gap},
               {"family", io::to_json(reduced)}}
              .dump(2)
       << '\n';
  }
  return {os.str(), 0, {}};
}

Output linearize_demo(const ExperimentConfig& c, Format fmt) {
  const io::DirectionSpec spec = load_direction(c);
  const DirectionVector& alpha = spec.alpha;
  const auto battery = make_battery(alpha, c.cutoff);
  CurveFamily family;
  if (!c.curve_path.empty()) {
    family = io::parse_family(io::read_json(c.curve_path), &alpha);
  } else {
    Sampler sampler(c.seed);
    const TorusPoint x = basepoint(c, alpha.dim());
    for (int i = 0; i < c.samples; ++i) {
      const TorusPoint y(sampler.uniform_vector(alpha.dim(), 0.0, 1.0));
      family.curves.push_back(sampler.path(x, y, alpha));
    }
  }
  struct Row {
    std::size_t curve;
    const std::string* form;
    double raw;
    double twisted;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < family.curves.size(); ++i) {
    if (family.curves[i].dim() != alpha.dim()) throw MalformedInput("curve dimension differs from alpha");
    const TwistedCurrent LT = twist(CurrentHandle(family.curves[i]), alpha);
    for (const auto& f : battery->forms) {
      rows.push_back({i, &f.id, evaluate(LT.base(), f.form), evaluate_twisted(LT, f.form)});
    }
  }
  std::ostringstream os;
  if (fmt == Format::json) {
    json list = json::array();
    for (const auto& r : rows) list.push_back({{"curve", r.curve}, {"form", *r.form}, {"raw", r.raw}, {"twisted", r.twisted}});
    os << list.dump(2) << '\n';
  } else {
    os << "curve,form,raw,twisted\n";
    for (const auto& r : rows) os << r.curve << ',' << *r.form << ',' << number(r.raw) << ',' << number(r.twisted) << '\n';
  }
  return {os.str(), 0, {}};
}

Output equivariance_test(const ExperimentConfig& c, Format fmt) {
  const io::DirectionSpec spec = load_direction(c);
  const DirectionVector& alpha = spec.alpha;
  const Index d = alpha.dim();
  const auto battery = make_battery(alpha, c.cutoff);
  const TorusPoint x = basepoint(c, d);
  Sampler sampler(c.seed);
  double max_gap = 0.0;
  double max_albanese_error = 0.0;
  std::vector<LinearizationPoint> points;
  for (int i = 0; i < c.samples; ++i) {
    const TorusPoint y(sampler.uniform_vector(d, 0.0, 1.0));
    const double t = sampler.uniform(-10.0, 10.0);
    LinearizationPoint p = linearize(y, x, sampler.path(x, y, alpha), alpha, battery);
    max_gap = std::max(max_gap, check_equivariance(p, t, alpha));
    const Vector expected = reduce_mod_one(y.coords - x.coords);
    max_albanese_error = std::max(max_albanese_error, circle_distance(albanese(p).coords, expected));
    if (points.size() < 2) points.push_back(std::move(p));
  }
  const Vector alb = albanese(points.front()).coords;
  SeparationReport sep;
  if (points.size() == 2) sep = injectivity_probe(points[0], points[1]);
  std::ostringstream os;
  if (fmt == Format::csv) {
    os << "equivariance_max_gap,albanese_max_error,separation_form,separation_gap\n"
       << number(max_gap) << ',' << number(max_albanese_error) << ',' << sep.form_id << ',' << number(sep.gap) << '\n';
  } else {
    json alb_json = json::array();
    for (Index i = 0; i < alb.size(); ++i) alb_json.push_back(alb[i]);
    json separation{{"form", sep.form_id.empty() ? json(nullptr) : json(sep.form_id)},
                    {"gap", sep.gap},
                    {"status", to_string(sep.status)}};
    os << json{{"equivariance_max_gap", max_gap},
               {"albanese", alb_json},
               {"albanese_max_error", max_albanese_error},
               {"separation", separation},
               {"samples", c.samples},
               {"battery_size", battery->forms.size()}}
              .dump(2)
       << '\n';
  }
  return {os.str(), 0, {}};
}

Output liouville_sweep(const ExperimentConfig& c, Format fmt) {
  const LiouvilleVector lv = liouville_vector(2, c.schedule);
  // The deepest convergents need a quad-level threshold to stay nonresonant.
  const DirectionVector alpha = lv.direction.with_resonance_tolerance(c.eps_res.value_or(1e-30));
  struct Row {
    std::size_t k;
    const Convergent* conv;
    double divisor;
    double amplification;
  };
  std::vector<Row> rows;
  for (std::size_t k = 0; k + 1 < lv.convergents.size(); ++k) {
    const auto mode = lv.convergents[k].mode();
    if (!mode) continue;
    const CohomologySolution sol = solve_cohomological(TrigPoly::cosine(*mode), alpha);
    rows.push_back({k + 1, &lv.convergents[k], alpha.divisor(*mode), sol.amplification});
  }
  std::ostringstream os;
  if (fmt == Format::json) {
    json list = json::array();
    for (const auto& r : rows) {
      list.push_back({{"k", r.k},
                      {"exponent", r.conv->exponent},
                      {"q", r.conv->q.str()},
                      {"p", r.conv->p.str()},
                      {"divisor", r.divisor},
                      {"amplification", r.amplification}});
    }
    os << json{{"lambda", lv.lambda_digits}, {"rows", list}}.dump(2) << '\n';
  } else {
    os << "k,exponent,q,p,divisor,amplification\n";
    for (const auto& r : rows) {
      os << r.k << ',' << r.conv->exponent << ',' << r.conv->q.str() << ',' << r.conv->p.str() << ',' << number(r.divisor)
         << ',' << number(r.amplification) << '\n';
    }
  }
  return {os.str(), 0, {}};
}

Format default_format(const std::string& command) {
  return command == "linearize-demo" || command == "liouville-sweep" ? Format::csv : Format::json;
}

bool is_input_error(const Error& e) {
  const std::string& k = e.kind();
  return k == "MalformedInput" || k == "BadSchedule" || k == "InvalidSegment" || k == "DimensionMismatch";
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"diophantine-check", "solve-cohomology",  "excise",
                                              "linearize-demo",    "equivariance-test", "liouville-sweep"};
  return names;
}

std::string error_record(const std::string& kind, const std::string& message) {
  return error_json(kind, message, nullptr).dump();
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  const Format fmt = config.format.value_or(default_format(config.command));
  auto emit = [&](const std::string& text) {
    if (config.out_dir.empty()) {
      out << text;
      out.flush();
      return;
    }
    std::filesystem::create_directories(config.out_dir);
    io::write_atomically(config.out_dir / (config.command + (fmt == Format::csv ? ".csv" : ".json")), text);
  };
  try {
    validate(config);
    static const std::map<std::string, std::function<Output(const ExperimentConfig&, Format)>> table{
        {"diophantine-check", diophantine_check}, {"solve-cohomology", solve_cohomology},
        {"excise", excise},                       {"linearize-demo", linearize_demo},
        {"equivariance-test", equivariance_test}, {"liouville-sweep", liouville_sweep}};
    const Output result = table.at(config.command)(config, fmt);
    emit(result.text);
    if (!result.error.empty()) err << result.error << '\n';
    return result.status;
  } catch (const ResonanceFound& e) {
    err << error_json(e.kind(), e.what(), &e.mode()).dump() << '\n';
    return 1;
  } catch (const ResonantMode& e) {
    err << error_json(e.kind(), e.what(), &e.mode()).dump() << '\n';
    return 1;
  } catch (const Error& e) {
    err << error_json(e.kind(), e.what(), nullptr).dump() << '\n';
    return is_input_error(e) ? 2 : 1;
  } catch (const std::exception& e) {
    err << error_json("InternalError", e.what(), nullptr).dump() << '\n';
    return 3;
  }
}

}  // namespace torlin::cli
