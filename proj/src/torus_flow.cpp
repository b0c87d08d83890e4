#include "torlin/torus_flow.hpp"

#include <cerrno>
#include <cmath>
#include <limits>
#include <sstream>

namespace torlin {

std::string format_lattice(const LatticeVector& n) {
  std::ostringstream os;
  os << '(';
  for (Index i = 0; i < n.size(); ++i) os << (i ? "," : "") << n[i];
  os << ')';
  return os.str();
}

ResonanceFound::ResonanceFound(LatticeVector n)
    : Error("ResonanceFound", "resonance " + format_lattice(n) + " inside the certification ball"), mode_(std::move(n)) {}

ResonantMode::ResonantMode(LatticeVector n)
    : Error("ResonantMode", "nonzero coefficient on resonant mode " + format_lattice(n)), mode_(std::move(n)) {}

DirectionVector::DirectionVector(QuadVector alpha, double resonance_tolerance)
    : alpha_(alpha.size()), exact_(std::move(alpha)), tolerance_(resonance_tolerance) {
  if (exact_.size() < 1) throw MalformedInput("direction vector needs d >= 1");
  bool nonzero = false;
  for (Index i = 0; i < exact_.size(); ++i) {
    alpha_[i] = static_cast<double>(exact_[i]);
    nonzero = nonzero || exact_[i] != 0;
  }
  if (!nonzero) throw MalformedInput("direction vector must be nonzero");
  if (!(tolerance_ > 0.0)) throw MalformedInput("resonance tolerance must be positive");
}

DirectionVector DirectionVector::from_decimal(const std::vector<std::string>& digits) {
  QuadVector exact(static_cast<Index>(digits.size()));
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const std::string& s = digits[i];
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(value)) {
      throw MalformedInput("not a decimal number: '" + s + "'");
    }
    try {
      exact[static_cast<Index>(i)] = Quad(s);
    } catch (const std::exception&) {
      throw MalformedInput("not a decimal number: '" + s + "'");
    }
  }
  return DirectionVector(std::move(exact));
}

DirectionVector DirectionVector::from_values(const Vector& alpha) {
  QuadVector exact(alpha.size());
  for (Index i = 0; i < alpha.size(); ++i) exact[i] = Quad(alpha[i]);
  return DirectionVector(std::move(exact));
}

DirectionVector DirectionVector::with_resonance_tolerance(double eps) const {
  DirectionVector copy(exact_, eps);
  copy.resonances_.clear();
  return copy;
}

DirectionVector DirectionVector::with_resonances(std::vector<LatticeVector> found) const {
  DirectionVector copy = *this;
  copy.resonances_ = std::move(found);
  return copy;
}

DirectionVector DirectionVector::with_certificate(DiophantineCertificate cert) const {
  DirectionVector copy = *this;
  copy.certificate_ = std::move(cert);
  return copy;
}

Quad DirectionVector::divisor_exact(const LatticeVector& n) const {
  if (n.size() != dim()) throw DimensionMismatch("lattice vector and direction differ in dimension");
  return lattice_dot<Quad>(n, exact_);
}

double DirectionVector::divisor(const LatticeVector& n) const { return static_cast<double>(divisor_exact(n)); }

bool DirectionVector::is_resonant(const LatticeVector& n) const {
  if (is_zero(n)) return false;
  const Quad bound = Quad(tolerance_) * Quad(std::max<std::int64_t>(1, sup_norm(n)));
  return boost::multiprecision::abs(divisor_exact(n)) < bound;
}

LiftPoint flow(const LiftPoint& x, double t, const DirectionVector& alpha) {
  if (x.dim() != alpha.dim()) throw DimensionMismatch("point and direction differ in dimension");
  return LiftPoint(x.coords + t * alpha.alpha());
}

TorusPoint flow(const TorusPoint& x, double t, const DirectionVector& alpha, LiftPoint* lift) {
  LiftPoint moved = flow(LiftPoint(x.coords), t, alpha);
  TorusPoint out = moved.project();
  if (lift != nullptr) *lift = std::move(moved);
  return out;
}

namespace {

// Visits every n in the ball whose first nonzero entry is positive, in
// lexicographic order. The callback sees n, a double estimate of n.alpha and
// |n|_inf; the last coordinate runs in the inner loop.
template <typename Visit>
void sweep_half_ball(const Vector& a, std::int64_t radius, Visit&& visit) {
  const Index d = a.size();
  LatticeVector n = LatticeVector::Zero(d);
  for (Index lead = 0; lead < d; ++lead) {
    n.setZero();
    if (lead == d - 1) {
      for (std::int64_t m = 1; m <= radius; ++m) {
        n[lead] = m;
        visit(n, static_cast<double>(m) * a[lead], m);
      }
      continue;
    }
    n[lead] = 1;
    for (Index j = lead + 1; j < d - 1; ++j) n[j] = -radius;
    const double last = a[d - 1];
    while (true) {
      double base = 0.0;
      std::int64_t prefix_norm = 0;
      for (Index j = lead; j < d - 1; ++j) {
        base += static_cast<double>(n[j]) * a[j];
        prefix_norm = std::max<std::int64_t>(prefix_norm, std::llabs(n[j]));
      }
      for (std::int64_t m = -radius; m <= radius; ++m) {
        n[d - 1] = m;
        visit(n, base + static_cast<double>(m) * last, std::max<std::int64_t>(prefix_norm, std::llabs(m)));
      }
      Index j = d - 2;
      while (j >= lead) {
        if (n[j] < radius) {
          ++n[j];
          break;
        }
        n[j] = (j == lead) ? 1 : -radius;
        --j;
      }
      if (j < lead) break;
    }
  }
}

// Double estimates below this multiple of |n|_inf are re-evaluated in Quad.
double refine_threshold(const DirectionVector& alpha) { return std::max(1e-6, 10.0 * alpha.resonance_tolerance()); }

}  // namespace

std::vector<LatticeVector> find_resonances(const DirectionVector& alpha, std::int64_t radius) {
  if (radius < 1) throw MalformedInput("resonance radius must be >= 1");
  std::vector<LatticeVector> found;
  const double refine = refine_threshold(alpha);
  sweep_half_ball(alpha.alpha(), radius, [&](const LatticeVector& n, double dot, std::int64_t norm) {
    if (std::abs(dot) < refine * static_cast<double>(norm) && alpha.is_resonant(n)) found.push_back(n);
  });
  return found;
}

DiophantineCertificate certify_diophantine(const DirectionVector& alpha, double tau, std::int64_t radius) {
  if (radius < 1) throw MalformedInput("certification radius must be >= 1");
  if (!(tau >= 0.0)) throw MalformedInput("tau must be >= 0");
  std::vector<double> weight(static_cast<std::size_t>(radius) + 1);
  for (std::int64_t k = 0; k <= radius; ++k) weight[static_cast<std::size_t>(k)] = std::pow(static_cast<double>(k), tau);

  const double refine = refine_threshold(alpha);
  DiophantineCertificate cert;
  cert.tau = tau;
  cert.radius = radius;
  cert.c_min = std::numeric_limits<double>::infinity();
  // Bound on the rounding error of the accumulated dot product per unit of |n|_inf.
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() * alpha.alpha().lpNorm<1>();
  sweep_half_ball(alpha.alpha(), radius, [&](const LatticeVector& n, double dot, std::int64_t norm) {
    if (std::abs(dot) < refine * static_cast<double>(norm)) {
      if (alpha.is_resonant(n)) throw ResonanceFound(n);
    }
    const double w = weight[static_cast<std::size_t>(norm)];
    if ((std::abs(dot) - slack * static_cast<double>(norm)) * w >= cert.c_min) return;
    const double value = std::abs(alpha.divisor(n)) * w;
    if (value < cert.c_min) {
      cert.c_min = value;
      cert.argmin = n;
    }
  });
  return cert;
}

std::optional<LatticeVector> Convergent::mode() const {
  const boost::multiprecision::cpp_int limit = std::numeric_limits<std::int64_t>::max();
  if (q > limit || p > limit) return std::nullopt;
  LatticeVector n(2);
  n << static_cast<std::int64_t>(p), -static_cast<std::int64_t>(q);
  return n;
}

LiouvilleVector liouville_vector(Index d, const std::vector<int>& schedule) {
  if (d != 2) throw BadSchedule("Liouville vectors are built in d = 2");
  if (schedule.empty()) throw BadSchedule("empty schedule");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (schedule[k] < 1) throw BadSchedule("schedule exponents must be positive");
    if (k > 0 && schedule[k] <= schedule[k - 1]) throw BadSchedule("schedule must be strictly increasing");
  }
  // Quad keeps ~34 significant digits; 0.1 + ... + 10^-s needs s of them.
  if (schedule.back() > 33) throw BadSchedule("exponent beyond working precision (max 33)");

  std::string digits(static_cast<std::size_t>(schedule.back()), '0');
  for (int s : schedule) digits[static_cast<std::size_t>(s - 1)] = '1';
  LiouvilleVector out;
  out.lambda_digits = "0." + digits;
  out.direction = DirectionVector::from_decimal({"1", out.lambda_digits});

  using boost::multiprecision::cpp_int;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    Convergent c;
    c.exponent = schedule[k];
    c.q = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(schedule[k]));
    c.p = 0;
    for (std::size_t j = 0; j <= k; ++j) c.p += boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(schedule[k] - schedule[j]));
    out.convergents.push_back(std::move(c));
  }
  return out;
}

}  // namespace torlin
