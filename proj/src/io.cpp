#include "torlin/io.hpp"

#include <cerrno>
#include <charconv>
#include <fstream>
#include <sstream>

namespace torlin::io {

std::string format_decimal(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return std::string(buf, ptr);
}

namespace {

std::string digits_of(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<std::int64_t>());
  if (value.is_number()) return format_decimal(value.get<double>());
  throw MalformedInput("expected a decimal string, got " + value.dump());
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw MalformedInput(std::string("missing field '") + name + "'");
  return j.at(name);
}

Vector parse_vector(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw MalformedInput(std::string(what) + " must be a nonempty array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Index>(i)] = parse_decimal(j[i]);
  return v;
}

LatticeVector parse_lattice(const json& j) {
  if (!j.is_array() || j.empty()) throw MalformedInput("mode index must be a nonempty integer array");
  LatticeVector n(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) throw MalformedInput("mode index entries must be integers");
    n[static_cast<Index>(i)] = j[i].get<std::int64_t>();
  }
  return n;
}

json decimal_array(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(format_decimal(v[i]));
  return out;
}

}  // namespace

double parse_decimal(const json& value) {
  if (value.is_number()) return value.get<double>();
  if (!value.is_string()) throw MalformedInput("expected a decimal string, got " + value.dump());
  const std::string s = value.get<std::string>();
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(x)) {
    throw MalformedInput("not a finite decimal: '" + s + "'");
  }
  return x;
}

DirectionSpec parse_direction(const json& j) {
  DirectionSpec spec;
  const json& alpha = field(j, "alpha");
  if (!alpha.is_array() || alpha.empty()) throw MalformedInput("'alpha' must be a nonempty array");
  for (const auto& a : alpha) spec.digits.push_back(digits_of(a));
  if (j.contains("d")) {
    if (!j["d"].is_number_integer() || j["d"].get<std::int64_t>() != static_cast<std::int64_t>(spec.digits.size())) {
      throw MalformedInput("'d' does not match the length of 'alpha'");
    }
  }
  spec.alpha = DirectionVector::from_decimal(spec.digits);
  if (j.contains("tau") && !j["tau"].is_null()) spec.tau = parse_decimal(j["tau"]);
  if (j.contains("radius") && !j["radius"].is_null()) {
    if (!j["radius"].is_number_integer()) throw MalformedInput("'radius' must be an integer");
    spec.radius = j["radius"].get<std::int64_t>();
  }
  return spec;
}

json to_json(const DirectionSpec& spec) {
  json out{{"d", spec.alpha.dim()}, {"alpha", spec.digits}};
  if (spec.tau) out["tau"] = *spec.tau;
  if (spec.radius) out["radius"] = *spec.radius;
  return out;
}

json to_json(const LatticeVector& n) {
  json out = json::array();
  for (Index i = 0; i < n.size(); ++i) out.push_back(n[i]);
  return out;
}

TrigPoly parse_trig_poly(const json& j) {
  const json& dj = field(j, "d");
  if (!dj.is_number_integer() || dj.get<std::int64_t>() < 1) throw MalformedInput("'d' must be a positive integer");
  const Index d = dj.get<Index>();
  const json& modes = field(j, "modes");
  if (!modes.is_array()) throw MalformedInput("'modes' must be an array");
  std::vector<std::pair<LatticeVector, Complex>> coefficients;
  for (const auto& m : modes) {
    LatticeVector n = parse_lattice(field(m, "n"));
    if (n.size() != d) throw MalformedInput("mode index has wrong dimension");
    const double re = m.contains("re") ? parse_decimal(m["re"]) : 0.0;
    const double im = m.contains("im") ? parse_decimal(m["im"]) : 0.0;
    coefficients.emplace_back(std::move(n), Complex(re, im));
  }
  return TrigPoly::from_coefficients(d, coefficients);
}

json to_json(const TrigPoly& f) {
  json modes = json::array();
  for (const auto& [n, c] : f.modes()) {
    if (canonical_sign(n) != n) continue;
    modes.push_back({{"n", to_json(n)}, {"re", format_decimal(c.real())}, {"im", format_decimal(c.imag())}});
  }
  return json{{"d", f.dim()}, {"modes", modes}};
}

OneForm parse_one_form(const json& j) {
  const json& list = j.is_object() ? field(j, "components") : j;
  if (!list.is_array() || list.empty()) throw MalformedInput("a one-form is a nonempty list of polynomials");
  std::vector<TrigPoly> components;
  for (const auto& p : list) components.push_back(parse_trig_poly(p));
  if (static_cast<Index>(components.size()) != components.front().dim()) {
    throw MalformedInput("a one-form on T^d needs exactly d components");
  }
  return OneForm(std::move(components));
}

json to_json(const OneForm& eta) {
  json out = json::array();
  for (const auto& p : eta.components()) out.push_back(to_json(p));
  return out;
}

PiecewiseCurve parse_curve(const json& j, const DirectionVector* alpha) {
  const LiftPoint base(parse_vector(field(j, "basepoint"), "basepoint"));
  const json& segs = field(j, "segments");
  if (!segs.is_array()) throw MalformedInput("'segments' must be an array");
  std::vector<std::pair<Vector, SegmentKind>> steps;
  for (const auto& s : segs) {
    const std::string kind = field(s, "kind").is_string() ? s["kind"].get<std::string>() : "";
    SegmentKind k;
    if (kind == "flow") {
      k = SegmentKind::flow;
    } else if (kind == "transverse") {
      k = SegmentKind::transverse;
    } else {
      throw MalformedInput("segment kind must be \"flow\" or \"transverse\"");
    }
    Vector v = parse_vector(field(s, "displacement"), "displacement");
    if (v.size() != base.dim()) throw MalformedInput("displacement dimension differs from basepoint");
    steps.emplace_back(std::move(v), k);
  }
  PiecewiseCurve g = PiecewiseCurve::from_steps(base, steps);
  if (alpha != nullptr) validate_curve(g, *alpha);
  return g;
}

json to_json(const PiecewiseCurve& g) {
  json segs = json::array();
  for (const auto& s : g.segments()) {
    segs.push_back({{"kind", to_string(s.kind)}, {"displacement", decimal_array(s.displacement)}});
  }
  return json{{"basepoint", decimal_array(g.basepoint_lift().coords)}, {"segments", segs}};
}

CurveFamily parse_family(const json& j, const DirectionVector* alpha) {
  CurveFamily family;
  if (j.is_object() && j.contains("basepoint")) {
    family.curves.push_back(parse_curve(j, alpha));
    return family;
  }
  const json& list = j.is_object() ? field(j, "curves") : j;
  if (!list.is_array()) throw MalformedInput("expected a curve, a list of curves or {\"curves\": [...]}");
  for (const auto& c : list) family.curves.push_back(parse_curve(c, alpha));
  if (!family.curves.empty()) {
    for (const auto& g : family.curves) {
      if (g.dim() != family.curves.front().dim()) throw MalformedInput("curves in a family must share a dimension");
    }
  }
  return family;
}

json to_json(const CurveFamily& family) {
  json list = json::array();
  for (const auto& g : family.curves) list.push_back(to_json(g));
  return json{{"curves", list}};
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw MalformedInput("invalid JSON in '" + path.string() + "': " + e.what());
  }
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << contents;
    if (!out.flush()) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace torlin::io
