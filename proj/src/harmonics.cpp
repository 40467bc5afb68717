#include "heic/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>

#include "heic/errors.hpp"

namespace heic {
namespace {

void require_dimension(int d) {
  if (d < 3) throw ValidationError("harmonic analysis needs d >= 3 (gamma = (d-2)/2 must be positive)");
}

// Exact C(n, k) with overflow detection.
std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > static_cast<__int128>(INT64_MAX)) throw ValidationError("harmonic dimension overflows int64");
  }
  return static_cast<std::int64_t>(acc);
}

// 1 / int_0^pi sin^{d-2}(theta) dtheta.
double sphere_weight_normalizer(int d) {
  const double m = d - 2.0;
  return std::exp(std::lgamma(m / 2.0 + 1.0) - std::lgamma((m + 1.0) / 2.0)) / std::sqrt(std::numbers::pi);
}

}  // namespace

std::int64_t harmonic_space_dim(int d, int k) {
  require_dimension(d);
  if (k < 0) throw ValidationError("harmonic level must be non-negative");
  if (k == 0) return 1;
  if (k == 1) return d;
  return binomial(k + d - 1, k) - binomial(k + d - 3, k - 2);
}

Rational addition_constant(int d, int k) {
  require_dimension(d);
  if (k < 0) throw ValidationError("harmonic level must be non-negative");
  std::int64_t num = 2LL * k + d - 2;
  std::int64_t den = d - 2;
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

double gegenbauer_parameter(int d) {
  require_dimension(d);
  return (d - 2) / 2.0;
}

double gegenbauer(int k, double gamma, double t) {
  if (k < 0) throw ValidationError("Gegenbauer degree must be non-negative");
  if (!(gamma > 0.0)) throw ValidationError("Gegenbauer parameter must be positive");
  if (!(t >= -1.0 && t <= 1.0)) throw ValidationError("Gegenbauer argument must lie in [-1,1]");
  double prev = 1.0;
  if (k == 0) return prev;
  double cur = 2.0 * gamma * t;
  for (int j = 2; j <= k; ++j) {
    const double next = (2.0 * (j + gamma - 1.0) * t * cur - (j + 2.0 * gamma - 2.0) * prev) / j;
    prev = cur;
    cur = next;
  }
  return cur;
}

double gegenbauer_at_one(int k, double gamma) {
  if (k < 0) throw ValidationError("Gegenbauer degree must be non-negative");
  if (!(gamma > 0.0)) throw ValidationError("Gegenbauer parameter must be positive");
  return std::exp(std::lgamma(k + 2.0 * gamma) - std::lgamma(k + 1.0) - std::lgamma(2.0 * gamma));
}

HarmonicLevel HarmonicLevel::make(int d, int k) {
  return {d, k, harmonic_space_dim(d, k), addition_constant(d, k), gegenbauer_parameter(d)};
}

FunckHeckeValue funck_hecke_eigenvalue(const LinkFunction& link, int d, int k,
                                       const QuadratureConfig& quadrature) {
  require_dimension(d);
  if (k < 0) throw ValidationError("harmonic level must be non-negative");
  const double gamma = gegenbauer_parameter(d);
  const double at_one = gegenbauer_at_one(k, gamma);
  const int sine_power = d - 2;

  // t = cos(theta) turns the weight (1-t^2)^{(d-3)/2} dt into sin^{d-2}(theta)
  // dtheta, which is smooth at both ends for every d.
  auto integrand = [&](double theta) {
    const double t = std::clamp(std::cos(theta), -1.0, 1.0);
    return link(t) * (gegenbauer(k, gamma, t) / at_one) * std::pow(std::sin(theta), sine_power);
  };
  std::vector<double> cuts;
  for (const double t : link.breakpoints()) cuts.push_back(std::acos(t));

  const double normalizer = sphere_weight_normalizer(d);
  try {
    const QuadratureResult r = integrate(integrand, 0.0, std::numbers::pi, cuts, quadrature);
    return {normalizer * r.value, normalizer * r.error};
  } catch (const QuadratureError& e) {
    throw QuadratureError("Funck-Hecke integral for level " + std::to_string(k) + " did not converge",
                          normalizer * e.best_estimate(), normalizer * e.error_estimate());
  }
}

std::vector<double> AnalyticSpectrum::flattened() const {
  std::vector<double> out;
  for (const auto& level : levels) out.insert(out.end(), static_cast<std::size_t>(level.multiplicity), level.eigenvalue);
  return out;
}

AnalyticSpectrum analytic_spectrum(const LinkFunction& link, int d, int k_max,
                                   const QuadratureConfig& quadrature) {
  require_dimension(d);
  if (k_max < 1) throw ValidationError("analytic spectrum needs k_max >= 1");
  AnalyticSpectrum out;
  out.d = d;
  out.link = link.describe();
  out.k_max = k_max;
  out.levels.reserve(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    const FunckHeckeValue v = funck_hecke_eigenvalue(link, d, k, quadrature);
    out.levels.push_back({k, v.eigenvalue, harmonic_space_dim(d, k), v.error});
  }
  return out;
}

double gap1_analytic(const AnalyticSpectrum& spectrum) {
  if (spectrum.levels.size() < 3) throw ValidationError("spectral gap needs levels 0..2 at least");
  const double lambda1 = spectrum.level_value(1);
  double gap = std::abs(lambda1);  // the zero tail
  for (const auto& level : spectrum.levels) {
    if (level.k == 1) continue;
    gap = std::min(gap, std::abs(lambda1 - level.eigenvalue));
  }
  return gap;
}

SobolevNorm sobolev_norm(const LinkFunction& link, int d, double s, int k_max,
                         const QuadratureConfig& quadrature) {
  if (!(s >= 0.0)) throw ValidationError("Sobolev regularity must be non-negative");
  const double gamma = gegenbauer_parameter(d);
  const AnalyticSpectrum spectrum = analytic_spectrum(link, d, k_max, quadrature);
  std::vector<double> terms;
  terms.reserve(spectrum.levels.size());
  for (const auto& level : spectrum.levels) {
    const double k = level.k;
    const double weight = std::pow(1.0 + k * (k + 2.0 * gamma + 1.0), s);
    terms.push_back(static_cast<double>(level.multiplicity) * level.eigenvalue * level.eigenvalue * weight);
  }
  const double total = std::accumulate(terms.begin(), terms.end(), 0.0);
  const std::size_t tail_from = terms.size() >= 3 ? terms.size() - 3 : 0;
  const double tail = std::accumulate(terms.begin() + static_cast<std::ptrdiff_t>(tail_from), terms.end(), 0.0);
  return {total, total > 0.0 && tail > 1e-6 * total};
}

}  // namespace heic
