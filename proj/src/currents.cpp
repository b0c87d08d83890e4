#include "torlin/currents.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace torlin {

Complex segment_factor(double u) {
  if (std::abs(u) < 1e-4) {
    // sum_k z^k / (k+1)!, z = 2 pi i u; |z| < 6.3e-4 so six terms reach 1e-20.
    const Complex z(0.0, kTwoPi * u);
    Complex term(1.0, 0.0), acc(1.0, 0.0);
    for (int k = 1; k <= 6; ++k) {
      term *= z / static_cast<double>(k + 1);
      acc += term;
    }
    return acc;
  }
  const Complex z(0.0, kTwoPi * u);
  return (std::exp(z) - 1.0) / z;
}

namespace {

Complex phase_at(const LatticeVector& n, const Vector& x) {
  double phase = 0.0;
  for (Index i = 0; i < n.size(); ++i) phase += static_cast<double>(n[i]) * x[i];
  phase -= std::round(phase);
  return std::polar(1.0, kTwoPi * phase);
}

double lattice_dot_real(const LatticeVector& n, const Vector& v) {
  double acc = 0.0;
  for (Index i = 0; i < n.size(); ++i) acc += static_cast<double>(n[i]) * v[i];
  return acc;
}

}  // namespace

double integrate(const PiecewiseCurve& g, const OneForm& eta) {
  if (g.is_trivial()) return 0.0;
  if (g.dim() != eta.dim()) throw DimensionMismatch("curve and form differ in dimension");
  Complex total(0.0, 0.0);
  for (const auto& s : g.segments()) {
    for (Index j = 0; j < eta.dim(); ++j) {
      const double vj = s.displacement[j];
      if (vj == 0.0) continue;
      for (const auto& [n, c] : eta[j].modes()) {
        total += c * vj * phase_at(n, s.start.coords) * segment_factor(lattice_dot_real(n, s.displacement));
      }
    }
  }
  return total.real();
}

double integrate(const CurveFamily& family, const OneForm& eta) {
  double total = 0.0;
  for (const auto& g : family.curves) total += integrate(g, eta);
  return total;
}

double evaluate(const CurrentHandle& T, const OneForm& eta) { return integrate(T.source(), eta); }

void ZeroCurrent::add(const TorusPoint& p, double weight, double tol) {
  if (weight == 0.0) return;
  for (auto it = atoms_.begin(); it != atoms_.end(); ++it) {
    if (same_point(it->point, p, tol)) {
      it->weight += weight;
      if (it->weight == 0.0) atoms_.erase(it);
      return;
    }
  }
  atoms_.push_back(Atom{p, weight});
}

double ZeroCurrent::pair(const TrigPoly& f) const {
  double total = 0.0;
  for (const auto& a : atoms_) total += a.weight * f(a.point);
  return total;
}

bool ZeroCurrent::equals(const ZeroCurrent& other, double tol) const {
  if (atoms_.size() != other.atoms_.size()) return false;
  for (const auto& a : atoms_) {
    const bool matched = std::any_of(other.atoms_.begin(), other.atoms_.end(), [&](const Atom& b) {
      return std::abs(a.weight - b.weight) <= tol && same_point(a.point, b.point, tol);
    });
    if (!matched) return false;
  }
  return true;
}

ZeroCurrent boundary(const CurrentHandle& T) {
  ZeroCurrent z;
  z.add(T.source().terminal(), 1.0);
  z.add(T.source().initial(), -1.0);
  return z;
}

ZeroCurrent project_pi_x(const CurrentHandle& T, const TorusPoint& x) {
  if (!same_point(T.source().initial(), x)) throw BasepointMismatch("curve does not start at the projection basepoint");
  ZeroCurrent z = boundary(T);
  z.add(x, 1.0);
  return z;
}

bool is_loop_current(const CurrentHandle& T1, const CurrentHandle& T2) {
  if (!same_point(T1.source().initial(), T2.source().initial())) {
    throw BasepointMismatch("currents are backed by curves with different basepoints");
  }
  return boundary(T1).equals(boundary(T2));
}

namespace {

bool same_poly(const TrigPoly& a, const TrigPoly& b) {
  if (a.dim() != b.dim() || a.modes().size() != b.modes().size()) return false;
  auto ia = a.modes().begin();
  auto ib = b.modes().begin();
  for (; ia != a.modes().end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second != ib->second) return false;
  }
  return true;
}

bool same_form(const OneForm& a, const OneForm& b) {
  if (a.dim() != b.dim()) return false;
  for (Index j = 0; j < a.dim(); ++j) {
    if (!same_poly(a[j], b[j])) return false;
  }
  return true;
}

std::uint64_t form_hash(const OneForm& eta) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  for (Index j = 0; j < eta.dim(); ++j) {
    mix(static_cast<std::uint64_t>(j));
    for (const auto& [n, c] : eta[j].modes()) {
      for (Index i = 0; i < n.size(); ++i) mix(static_cast<std::uint64_t>(n[i]));
      mix(std::hash<double>{}(c.real()));
      mix(std::hash<double>{}(c.imag()));
    }
  }
  return h;
}

}  // namespace

struct TwistedCurrent::Memo {
  struct Entry {
    OneForm form;
    CohomologySolution solution;
  };
  std::mutex mutex;
  std::map<std::uint64_t, std::vector<std::unique_ptr<Entry>>> table;
  std::size_t count = 0;
};

TwistedCurrent::TwistedCurrent(CurrentHandle base, DirectionVector alpha)
    : base_(std::move(base)), alpha_(std::move(alpha)), memo_(std::make_shared<Memo>()) {}

const CohomologySolution& TwistedCurrent::solution_for(const OneForm& eta) const {
  if (!memo_) throw std::logic_error("default-constructed twisted current");
  const std::uint64_t key = form_hash(eta);
  std::lock_guard<std::mutex> lock(memo_->mutex);
  auto& bucket = memo_->table[key];
  for (const auto& e : bucket) {
    if (same_form(e->form, eta)) return e->solution;
  }
  auto entry = std::make_unique<Memo::Entry>(Memo::Entry{eta, solve_for_form(eta, alpha_)});
  bucket.push_back(std::move(entry));
  ++memo_->count;
  return bucket.back()->solution;
}

std::size_t TwistedCurrent::memo_size() const {
  if (!memo_) return 0;
  std::lock_guard<std::mutex> lock(memo_->mutex);
  return memo_->count;
}

TwistedCurrent twist(const CurrentHandle& T, const DirectionVector& alpha) { return TwistedCurrent(T, alpha); }

double evaluate_twisted(const TwistedCurrent& LT, const OneForm& eta) {
  const PiecewiseCurve& g = LT.base().source();
  const double raw = evaluate(LT.base(), eta);
  const CohomologySolution& sol = LT.solution_for(eta);
  const double h_end = sol.h(g.end_lift().coords);
  const double h_start = sol.h(g.basepoint_lift().coords);
  const double via_boundary = raw - (h_end - h_start);
  const double via_form = integrate(g, eta - exterior_derivative(sol.h));
  const double scale = std::max({1.0, std::abs(raw), std::abs(h_end), std::abs(h_start)});
  if (std::abs(via_boundary - via_form) > 1e-10 * scale) {
    std::ostringstream os;
    os.precision(17);
    os << "twisted evaluation routes disagree: " << via_boundary << " vs " << via_form;
    throw std::logic_error(os.str());
  }
  return via_boundary;
}

const char* to_string(FormFamily family) {
  switch (family) {
    case FormFamily::albanese:
      return "albanese";
    case FormFamily::modulated:
      return "modulated";
    case FormFamily::transverse:
      return "transverse";
    case FormFamily::unit_flow:
      return "unit_flow";
  }
  return "unknown";
}

std::string lattice_tag(const LatticeVector& n) {
  std::ostringstream os;
  os << '[';
  for (Index i = 0; i < n.size(); ++i) os << (i ? "," : "") << n[i];
  os << ']';
  return os.str();
}

std::vector<LatticeVector> canonical_modes(Index d, int cutoff) {
  if (d < 1) throw MalformedInput("dimension must be >= 1");
  if (cutoff < 1) throw MalformedInput("battery cutoff must be >= 1");
  std::vector<LatticeVector> out;
  LatticeVector n = LatticeVector::Constant(d, -cutoff);
  while (true) {
    if (!is_zero(n) && canonical_sign(n) == n) out.push_back(n);
    Index i = d - 1;
    while (i >= 0) {
      if (n[i] < cutoff) {
        ++n[i];
        break;
      }
      n[i] = -cutoff;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

std::vector<BatteryForm> test_battery(Index d, int cutoff) {
  std::vector<BatteryForm> out;
  for (Index j = 0; j < d; ++j) {
    out.push_back({"dx" + std::to_string(j + 1), OneForm::coordinate(d, j), FormFamily::albanese});
  }
  for (const auto& n : canonical_modes(d, cutoff)) {
    const std::string tag = lattice_tag(n);
    for (Index j = 0; j < d; ++j) {
      const std::string dx = "dx" + std::to_string(j + 1);
      out.push_back({"cos" + tag + dx, OneForm::modulated(TrigPoly::cosine(n), j), FormFamily::modulated});
      out.push_back({"sin" + tag + dx, OneForm::modulated(TrigPoly::sine(n), j), FormFamily::modulated});
    }
  }
  return out;
}

bool broadly_equivalent(const CurveFamily& a, const CurveFamily& b, const std::vector<BatteryForm>& battery,
                        double tol) {
  return std::all_of(battery.begin(), battery.end(), [&](const BatteryForm& f) {
    return std::abs(integrate(a, f.form) - integrate(b, f.form)) <= tol;
  });
}

}  // namespace torlin
