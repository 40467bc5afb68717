#pragma once

// Generative model for random geometric graphs on the sphere S^{d-1}:
// latent points X_i uniform on the sphere, a link f : [-1,1] -> [0,1],
// probabilities Theta_ij = rho * f(<X_i, X_j>), and Bernoulli adjacency.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "heic/symmetric_matrix.hpp"

namespace heic {

/// n points on S^{d-1}, one per row.
struct LatentSample {
  int dim = 0;
  Eigen::MatrixXd points;
  std::uint64_t seed = 0;

  Eigen::Index size() const noexcept { return points.rows(); }
};

class LinkFunction {
 public:
  struct Threshold {
    double tau;
  };
  struct Affine {
    double a;
    double b;
  };
  struct Table {
    std::vector<double> knots;
    std::vector<double> values;
  };
  struct Custom {
    std::function<double(double)> fn;
    std::vector<double> breakpoints;
    std::string name;
  };

  /// 1 when t <= tau, else 0.
  static LinkFunction threshold(double tau);
  /// a + b t. Rejects coefficients that leave [0,1] somewhere on [-1,1].
  static LinkFunction affine(double a, double b);
  static LinkFunction constant(double c) { return affine(c, 0.0); }
  /// Piecewise-linear interpolation through (knots[i], values[i]). Knots must
  /// be strictly increasing and span [-1,1]; values must lie in [0,1].
  static LinkFunction table(std::vector<double> knots, std::vector<double> values);
  /// Arbitrary callable, probed at 1024 Chebyshev points and rejected if any
  /// probe falls outside [0,1] by more than 1e-12. `breakpoints` lists known
  /// discontinuities or kinks inside (-1,1); quadrature splits there.
  static LinkFunction custom(std::function<double(double)> fn, std::vector<double> breakpoints = {},
                             std::string name = "custom");

  /// Parses "threshold:<tau>", "affine:<a>:<b>", "constant:<c>".
  static LinkFunction parse(const std::string& text);

  /// Evaluates at t, clamping t into [-1,1] first (inner products of unit
  /// vectors can overshoot by an ulp).
  double operator()(double t) const;

  /// out[i] = scale * f(t[i]). Threshold and affine links use the SIMD kernels.
  void evaluate(std::span<const double> t, double scale, std::span<double> out) const;

  /// Points in (-1,1) where f is discontinuous or not smooth.
  std::vector<double> breakpoints() const;
  std::string describe() const;

  bool is_threshold() const { return std::holds_alternative<Threshold>(kind_); }
  bool is_affine() const { return std::holds_alternative<Affine>(kind_); }
  bool is_custom() const { return std::holds_alternative<Custom>(kind_); }

  using Kind = std::variant<Threshold, Affine, Table, Custom>;
  const Kind& kind() const { return kind_; }

 private:
  explicit LinkFunction(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// Graphon rho * f(<x,y>) on n nodes. rho = Omega(log n / n) is the regime the
/// estimator is meant for, but any rho in (0,1] is accepted.
struct GraphModel {
  LinkFunction link;
  double sparsity;
  Eigen::Index n;

  GraphModel(LinkFunction link, double sparsity, Eigen::Index n);
};

LatentSample sample_uniform_sphere(Eigen::Index n, int d, std::uint64_t seed);

/// G* = (1/n) (<X_i, X_j>)_ij.
SymmetricMatrix gram_population(const LatentSample& sample);

/// Theta_ij = rho f(<X_i, X_j>) off the diagonal, 0 on it.
SymmetricMatrix probability_matrix(const LatentSample& sample, const GraphModel& model);

/// 0/1 adjacency with independent Bernoulli(Theta_ij) upper entries and a zero
/// diagonal.
SymmetricMatrix sample_adjacency(const SymmetricMatrix& theta, std::uint64_t seed);

/// Edge count divided by n(n-1)/2.
double edge_density(const SymmetricMatrix& adjacency);

/// Uniform double in [0,1) from the top 53 bits of a 64-bit draw.
inline double unit_uniform(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace heic
