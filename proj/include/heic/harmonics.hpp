#pragma once

// Spectral theory of geometric graphons W(x,y) = f(<x,y>) on S^{d-1}, d >= 3.
//
// The integral operator T_W acts diagonally on spherical harmonics: level k
// (dimension d_k) carries the single eigenvalue
//
//   lambda_k = A_d * int_{-1}^{1} f(t) P_k(t) (1 - t^2)^{(d-3)/2} dt,
//
// with P_k = G_k / G_k(1) the Gegenbauer polynomial of parameter
// gamma = (d-2)/2 normalised at t = 1, and A_d making the weight a probability
// measure, so lambda_0 is the mean of f(<x,Y>) for Y uniform on the sphere.

#include <cstdint>
#include <string>
#include <vector>

#include "heic/core_model.hpp"
#include "heic/quadrature.hpp"

namespace heic {

struct Rational {
  std::int64_t num;
  std::int64_t den;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

/// Dimension d_k of the degree-k spherical harmonics on S^{d-1}.
std::int64_t harmonic_space_dim(int d, int k);

/// Addition-theorem constant c_k = (2k + d - 2) / (d - 2), in lowest terms.
Rational addition_constant(int d, int k);

/// gamma = (d - 2) / 2.
double gegenbauer_parameter(int d);

/// G_k^gamma(t) by the three-term recurrence from G_0 = 1, G_1 = 2 gamma t.
double gegenbauer(int k, double gamma, double t);

/// G_k^gamma(1) = Gamma(k + 2 gamma) / (k! Gamma(2 gamma)).
double gegenbauer_at_one(int k, double gamma);

struct HarmonicLevel {
  int d;
  int k;
  std::int64_t dim;
  Rational c;
  double gamma;

  static HarmonicLevel make(int d, int k);
};

struct FunckHeckeValue {
  double eigenvalue;
  double error;
};

FunckHeckeValue funck_hecke_eigenvalue(const LinkFunction& link, int d, int k,
                                       const QuadratureConfig& quadrature = {});

struct SpectrumLevel {
  int k;
  double eigenvalue;
  std::int64_t multiplicity;
  double quad_err;
};

/// Per-level eigenvalues of T_W for k = 0..k_max. Eigenvalues above k_max are
/// taken to be 0, the only accumulation point.
struct AnalyticSpectrum {
  int d = 0;
  std::string link;
  int k_max = 0;
  std::vector<SpectrumLevel> levels;

  /// Each level's eigenvalue repeated `multiplicity` times, in level order.
  std::vector<double> flattened() const;
  double level_value(int k) const { return levels.at(static_cast<std::size_t>(k)).eigenvalue; }
};

AnalyticSpectrum analytic_spectrum(const LinkFunction& link, int d, int k_max,
                                   const QuadratureConfig& quadrature = {});

/// min |lambda_1 - lambda_j| over every eigenvalue not on level 1, including
/// lambda_0 and the zero tail.
double gap1_analytic(const AnalyticSpectrum& spectrum);

struct SobolevNorm {
  /// sum_k d_k mu_k^2 (1 + k (k + 2 gamma + 1))^s, truncated at k_max.
  double squared;
  /// True when the last three levels still carry more than 1e-6 of the sum.
  bool tail_flag;
};

SobolevNorm sobolev_norm(const LinkFunction& link, int d, double s, int k_max,
                         const QuadratureConfig& quadrature = {});

}  // namespace heic
