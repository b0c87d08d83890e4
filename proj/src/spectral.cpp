#include "torlin/spectral.hpp"

namespace torlin {

namespace {

void require_same_dim(Index a, Index b, const char* what) {
  if (a != b) throw DimensionMismatch(what);
}

// e^{2 pi i n.x}, with the phase reduced mod 1 before scaling.
Complex character(const LatticeVector& n, const Vector& x) {
  double phase = 0.0;
  for (Index i = 0; i < n.size(); ++i) phase += static_cast<double>(n[i]) * x[i];
  phase -= std::round(phase);
  return std::polar(1.0, kTwoPi * phase);
}

}  // namespace

TrigPoly::TrigPoly(Index d) : dim_(d) {
  if (d < 1) throw MalformedInput("dimension must be >= 1");
}

TrigPoly TrigPoly::constant(Index d, double value) {
  TrigPoly p(d);
  p.add_mode(LatticeVector::Zero(d), Complex(value, 0.0));
  return p;
}

TrigPoly TrigPoly::cosine(const LatticeVector& n, double amplitude) {
  return from_real_modes(n.size(), {RealMode{n, amplitude, 0.0}});
}

TrigPoly TrigPoly::sine(const LatticeVector& n, double amplitude) {
  return from_real_modes(n.size(), {RealMode{n, 0.0, amplitude}});
}

TrigPoly TrigPoly::from_real_modes(Index d, const std::vector<RealMode>& modes) {
  TrigPoly p(d);
  for (const auto& m : modes) {
    require_same_dim(m.n.size(), d, "mode dimension differs from polynomial dimension");
    if (torlin::is_zero(m.n)) {
      // sin(0) = 0
      p.add_mode(m.n, Complex(m.cos_amplitude, 0.0));
      continue;
    }
    // a cos + b sin = (a - ib)/2 e^{i.} + (a + ib)/2 e^{-i.}
    const Complex c(0.5 * m.cos_amplitude, -0.5 * m.sin_amplitude);
    p.add_mode(m.n, c);
    p.add_mode(-m.n, std::conj(c));
  }
  return p;
}

TrigPoly TrigPoly::from_coefficients(Index d, const std::vector<std::pair<LatticeVector, Complex>>& coefficients,
                                     double tol) {
  ModeMap modes;
  auto place = [&](const LatticeVector& n, Complex c) {
    auto [it, inserted] = modes.emplace(n, c);
    if (!inserted && std::abs(it->second - c) > tol * std::max(1.0, std::abs(c))) {
      throw MalformedInput("coefficients on " + format_lattice(n) + " violate Hermitian symmetry");
    }
  };
  for (const auto& [n, c] : coefficients) {
    require_same_dim(n.size(), d, "mode dimension differs from polynomial dimension");
    if (torlin::is_zero(n)) {
      if (std::abs(c.imag()) > tol * std::max(1.0, std::abs(c))) throw MalformedInput("mean coefficient must be real");
      place(n, Complex(c.real(), 0.0));
      continue;
    }
    place(n, c);
    place(-n, std::conj(c));
  }
  return from_hermitian_map(d, std::move(modes));
}

TrigPoly TrigPoly::from_hermitian_map(Index d, ModeMap modes) {
  TrigPoly p(d);
  for (auto it = modes.begin(); it != modes.end();) {
    require_same_dim(it->first.size(), d, "mode dimension differs from polynomial dimension");
    it = (it->second == Complex(0.0, 0.0)) ? modes.erase(it) : std::next(it);
  }
  p.modes_ = std::move(modes);
  return p;
}

void TrigPoly::add_mode(const LatticeVector& n, Complex c) {
  auto [it, inserted] = modes_.emplace(n, c);
  if (!inserted) it->second += c;
  if (it->second == Complex(0.0, 0.0)) modes_.erase(it);
}

Complex TrigPoly::coefficient(const LatticeVector& n) const {
  auto it = modes_.find(n);
  return it == modes_.end() ? Complex(0.0, 0.0) : it->second;
}

TrigPoly TrigPoly::without_mean() const {
  TrigPoly p = *this;
  p.modes_.erase(LatticeVector::Zero(dim_));
  return p;
}

double TrigPoly::max_coefficient() const {
  double m = 0.0;
  for (const auto& [n, c] : modes_) m = std::max(m, std::abs(c));
  return m;
}

double TrigPoly::operator()(const Vector& x) const {
  require_same_dim(x.size(), dim_, "evaluation point has wrong dimension");
  Complex acc(0.0, 0.0);
  for (const auto& [n, c] : modes_) acc += c * character(n, x);
  return acc.real();
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& other) {
  require_same_dim(dim_, other.dim_, "adding polynomials of different dimension");
  for (const auto& [n, c] : other.modes_) add_mode(n, c);
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& other) {
  require_same_dim(dim_, other.dim_, "subtracting polynomials of different dimension");
  for (const auto& [n, c] : other.modes_) add_mode(n, -c);
  return *this;
}

TrigPoly& TrigPoly::operator*=(double s) {
  if (s == 0.0) {
    modes_.clear();
    return *this;
  }
  for (auto& [n, c] : modes_) c *= s;
  return *this;
}

OneForm::OneForm(Index d) {
  if (d < 1) throw MalformedInput("dimension must be >= 1");
  components_.assign(static_cast<std::size_t>(d), TrigPoly(d));
}

OneForm::OneForm(std::vector<TrigPoly> components) : components_(std::move(components)) {
  if (components_.empty()) throw MalformedInput("one-form needs at least one component");
  for (const auto& p : components_) require_same_dim(p.dim(), dim(), "one-form component has wrong dimension");
}

OneForm OneForm::coordinate(Index d, Index j) { return modulated(TrigPoly::constant(d, 1.0), j); }

OneForm OneForm::modulated(const TrigPoly& f, Index j) {
  if (j < 0 || j >= f.dim()) throw DimensionMismatch("coordinate index out of range");
  OneForm eta(f.dim());
  eta.components_[static_cast<std::size_t>(j)] = f;
  return eta;
}

bool OneForm::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const TrigPoly& p) { return p.is_zero(); });
}

OneForm& OneForm::operator+=(const OneForm& other) {
  require_same_dim(dim(), other.dim(), "adding forms of different dimension");
  for (std::size_t j = 0; j < components_.size(); ++j) components_[j] += other.components_[j];
  return *this;
}

OneForm& OneForm::operator-=(const OneForm& other) {
  require_same_dim(dim(), other.dim(), "subtracting forms of different dimension");
  for (std::size_t j = 0; j < components_.size(); ++j) components_[j] -= other.components_[j];
  return *this;
}

OneForm& OneForm::operator*=(double s) {
  for (auto& p : components_) p *= s;
  return *this;
}

TrigPoly lie_derivative(const TrigPoly& f, const DirectionVector& alpha) {
  require_same_dim(f.dim(), alpha.dim(), "function and direction differ in dimension");
  TrigPoly::ModeMap out;
  for (const auto& [n, c] : f.modes()) {
    if (torlin::is_zero(n)) continue;
    out.emplace(n, Complex(0.0, kTwoPi * alpha.divisor(n)) * c);
  }
  return TrigPoly::from_hermitian_map(f.dim(), std::move(out));
}

CohomologySolution solve_cohomological(const TrigPoly& f, const DirectionVector& alpha) {
  require_same_dim(f.dim(), alpha.dim(), "function and direction differ in dimension");
  CohomologySolution sol;
  sol.c = f.mean();
  TrigPoly::ModeMap h;
  for (const auto& [n, c] : f.modes()) {
    if (torlin::is_zero(n)) continue;
    if (alpha.is_resonant(n)) throw ResonantMode(canonical_sign(n));
    const double divisor = alpha.divisor(n);
    h.emplace(n, c / Complex(0.0, kTwoPi * divisor));
    sol.amplification = std::max(sol.amplification, 1.0 / (kTwoPi * std::abs(divisor)));
  }
  sol.h = TrigPoly::from_hermitian_map(f.dim(), std::move(h));
  return sol;
}

TrigPoly contract_with_flow(const OneForm& eta, const DirectionVector& alpha) {
  require_same_dim(eta.dim(), alpha.dim(), "form and direction differ in dimension");
  TrigPoly out(eta.dim());
  for (Index j = 0; j < eta.dim(); ++j) {
    if (alpha[j] != 0.0) out += eta[j] * alpha[j];
  }
  return out;
}

CohomologySolution solve_for_form(const OneForm& eta, const DirectionVector& alpha) {
  return solve_cohomological(contract_with_flow(eta, alpha), alpha);
}

OneForm exterior_derivative(const TrigPoly& f) {
  std::vector<TrigPoly> components;
  components.reserve(static_cast<std::size_t>(f.dim()));
  for (Index j = 0; j < f.dim(); ++j) {
    TrigPoly::ModeMap modes;
    for (const auto& [n, c] : f.modes()) {
      if (n[j] != 0) modes.emplace(n, Complex(0.0, kTwoPi * static_cast<double>(n[j])) * c);
    }
    components.push_back(TrigPoly::from_hermitian_map(f.dim(), std::move(modes)));
  }
  return OneForm(std::move(components));
}

double sobolev_norm(const TrigPoly& f, double s) {
  if (!(s >= 0.0)) throw MalformedInput("Sobolev order must be >= 0");
  double acc = 0.0;
  for (const auto& [n, c] : f.modes()) {
    const double n2 = n.cast<double>().squaredNorm();
    acc += std::pow(1.0 + n2, s) * std::norm(c);
  }
  return std::sqrt(acc);
}

}  // namespace torlin
