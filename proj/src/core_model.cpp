#include "heic/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "heic/errors.hpp"
#include "heic/kernels.hpp"

namespace heic {
namespace {

constexpr double kProbabilitySlack = 1e-12;
constexpr int kCustomProbes = 1024;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double checked_probability(double value, const char* what) {
  if (!(value >= -kProbabilitySlack && value <= 1.0 + kProbabilitySlack)) {
    std::ostringstream msg;
    msg << what << " produced " << value << ", outside [0,1]";
    throw ValidationError(msg.str());
  }
  return std::clamp(value, 0.0, 1.0);
}

double parse_number(const std::string& text, const std::string& whole) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("cannot parse link spec '" + whole + "'");
  }
}

}  // namespace

LinkFunction LinkFunction::threshold(double tau) {
  if (!std::isfinite(tau)) throw ValidationError("threshold must be finite");
  return LinkFunction(Threshold{tau});
}

LinkFunction LinkFunction::affine(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw ValidationError("affine coefficients must be finite");
  const double lo = a - std::abs(b);
  const double hi = a + std::abs(b);
  if (lo < -kProbabilitySlack || hi > 1.0 + kProbabilitySlack) {
    throw ValidationError("affine link leaves [0,1] on [-1,1]");
  }
  return LinkFunction(Affine{a, b});
}

LinkFunction LinkFunction::table(std::vector<double> knots, std::vector<double> values) {
  if (knots.size() < 2 || knots.size() != values.size()) {
    throw ValidationError("table link needs at least two (knot, value) pairs");
  }
  if (!std::is_sorted(knots.begin(), knots.end(), std::less_equal<>{}) ||
      std::adjacent_find(knots.begin(), knots.end()) != knots.end()) {
    throw ValidationError("table knots must be strictly increasing");
  }
  if (knots.front() > -1.0 || knots.back() < 1.0) {
    throw ValidationError("table knots must cover [-1,1]");
  }
  for (const double v : values) checked_probability(v, "table link");
  return LinkFunction(Table{std::move(knots), std::move(values)});
}

LinkFunction LinkFunction::custom(std::function<double(double)> fn, std::vector<double> breakpoints,
                                  std::string name) {
  if (!fn) throw ValidationError("custom link needs a callable");
  for (int j = 0; j < kCustomProbes; ++j) {
    const double t = std::cos(std::numbers::pi * (j + 0.5) / kCustomProbes);
    checked_probability(fn(t), "custom link");
  }
  checked_probability(fn(-1.0), "custom link");
  checked_probability(fn(1.0), "custom link");
  std::sort(breakpoints.begin(), breakpoints.end());
  return LinkFunction(Custom{std::move(fn), std::move(breakpoints), std::move(name)});
}

LinkFunction LinkFunction::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string piece; std::getline(in, piece, ':');) parts.push_back(piece);
  if (parts.empty()) throw ValidationError("empty link spec");
  const std::string& kind = parts.front();
  if (kind == "threshold" && parts.size() == 2) return threshold(parse_number(parts[1], text));
  if (kind == "affine" && parts.size() == 3) {
    return affine(parse_number(parts[1], text), parse_number(parts[2], text));
  }
  if (kind == "constant" && parts.size() == 2) return constant(parse_number(parts[1], text));
  throw ValidationError("unknown link spec '" + text +
                        "' (expected threshold:<tau>, affine:<a>:<b> or constant:<c>)");
}

double LinkFunction::operator()(double t) const {
  t = std::clamp(t, -1.0, 1.0);
  return std::visit(
      Overloaded{
          [t](const Threshold& k) { return t <= k.tau ? 1.0 : 0.0; },
          [t](const Affine& k) { return k.a + k.b * t; },
          [t](const Table& k) {
            const auto hi = std::upper_bound(k.knots.begin(), k.knots.end(), t);
            if (hi == k.knots.begin()) return k.values.front();
            if (hi == k.knots.end()) return k.values.back();
            const auto j = static_cast<std::size_t>(hi - k.knots.begin());
            const double w = (t - k.knots[j - 1]) / (k.knots[j] - k.knots[j - 1]);
            return (1.0 - w) * k.values[j - 1] + w * k.values[j];
          },
          [t](const Custom& k) { return k.fn(t); },
      },
      kind_);
}

void LinkFunction::evaluate(std::span<const double> t, double scale, std::span<double> out) const {
  if (out.size() != t.size()) throw ValidationError("evaluate: size mismatch");
  const auto& k = simd::kernels();
  if (const auto* thr = std::get_if<Threshold>(&kind_)) {
    // t is not clamped here: t <= tau is unaffected by clamping when |tau| <= 1,
    // and for |tau| > 1 the clamp only matters at t = +-1 exactly.
    if (thr->tau >= 1.0 || thr->tau < -1.0) {
      std::fill(out.begin(), out.end(), thr->tau >= 1.0 ? scale : 0.0);
      return;
    }
    k.threshold_le(t.data(), thr->tau, scale, out.data(), t.size());
    return;
  }
  if (const auto* aff = std::get_if<Affine>(&kind_)) {
    k.affine(t.data(), aff->a, aff->b, scale, out.data(), t.size());
    // Overshoot of |t| past 1 by rounding can push a + b t an ulp outside [0,1].
    for (double& v : out) v = std::clamp(v, 0.0, scale);
    return;
  }
  const bool custom = is_custom();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double v = (*this)(t[i]);
    out[i] = scale * (custom ? checked_probability(v, "custom link") : v);
  }
}

std::vector<double> LinkFunction::breakpoints() const {
  std::vector<double> out;
  std::visit(Overloaded{
                 [&](const Threshold& k) {
                   if (k.tau > -1.0 && k.tau < 1.0) out.push_back(k.tau);
                 },
                 [](const Affine&) {},
                 [&](const Table& k) {
                   for (const double x : k.knots) {
                     if (x > -1.0 && x < 1.0) out.push_back(x);
                   }
                 },
                 [&](const Custom& k) {
                   for (const double x : k.breakpoints) {
                     if (x > -1.0 && x < 1.0) out.push_back(x);
                   }
                 },
             },
             kind_);
  return out;
}

std::string LinkFunction::describe() const {
  std::ostringstream s;
  s.precision(17);
  std::visit(Overloaded{
                 [&](const Threshold& k) { s << "threshold(" << k.tau << ")"; },
                 [&](const Affine& k) { s << "affine(" << k.a << "," << k.b << ")"; },
                 [&](const Table& k) { s << "table(" << k.knots.size() << " knots)"; },
                 [&](const Custom& k) { s << k.name; },
             },
             kind_);
  return s.str();
}

GraphModel::GraphModel(LinkFunction link_, double sparsity_, Eigen::Index n_)
    : link(std::move(link_)), sparsity(sparsity_), n(n_) {
  if (!(sparsity > 0.0 && sparsity <= 1.0)) throw ValidationError("sparsity must lie in (0,1]");
  if (n < 1) throw ValidationError("graph needs at least one node");
}

LatentSample sample_uniform_sphere(Eigen::Index n, int d, std::uint64_t seed) {
  if (n < 1) throw ValidationError("need at least one latent point");
  if (d < 2) throw ValidationError("sphere dimension d must be at least 2");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  LatentSample out{d, Eigen::MatrixXd(n, d), seed};
  Eigen::VectorXd draw(d);
  for (Eigen::Index i = 0; i < n; ++i) {
    double norm = 0.0;
    do {
      for (int k = 0; k < d; ++k) draw(k) = normal(rng);
      norm = draw.norm();
    } while (norm == 0.0);
    out.points.row(i) = draw.transpose() / norm;
  }
  return out;
}

namespace {

// inner(j) = <X_row, X_j> for all j, via one axpy per coordinate over the
// column-major point matrix.
void row_inner_products(const Eigen::MatrixXd& points, Eigen::Index row, std::span<double> inner) {
  const auto& k = simd::kernels();
  std::fill(inner.begin(), inner.end(), 0.0);
  const auto n = static_cast<std::size_t>(points.rows());
  for (Eigen::Index c = 0; c < points.cols(); ++c) {
    k.axpy(points(row, c), points.col(c).data(), inner.data(), n);
  }
}

}  // namespace

SymmetricMatrix gram_population(const LatentSample& sample) {
  const Eigen::Index n = sample.size();
  if (n < 1 || sample.points.cols() != sample.dim) throw ValidationError("invalid latent sample");
  Eigen::MatrixXd g(n, n);
  std::vector<double> inner(static_cast<std::size_t>(n));
  const double inv_n = 1.0 / static_cast<double>(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    row_inner_products(sample.points, i, inner);
    simd::kernels().scale(inner.data(), inv_n, inner.size());
    std::copy(inner.begin(), inner.end(), g.col(i).data());
  }
  // Column i holds row i's products; mirror its upper part for exact symmetry.
  return SymmetricMatrix::from_upper(std::move(g));
}

SymmetricMatrix probability_matrix(const LatentSample& sample, const GraphModel& model) {
  const Eigen::Index n = sample.size();
  if (model.n != n) throw ValidationError("model node count does not match the latent sample");
  if (sample.points.cols() != sample.dim) throw ValidationError("invalid latent sample");

  Eigen::MatrixXd theta(n, n);
  std::vector<double> inner(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    row_inner_products(sample.points, i, inner);
    std::span<double> col(theta.col(i).data(), static_cast<std::size_t>(n));
    model.link.evaluate(inner, model.sparsity, col);
    theta(i, i) = 0.0;
  }
  return SymmetricMatrix::from_upper(std::move(theta));
}

SymmetricMatrix sample_adjacency(const SymmetricMatrix& theta, std::uint64_t seed) {
  const Eigen::Index n = theta.order();
  const auto& dense = theta.dense();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      const double p = dense(i, j);
      if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("probability matrix entry outside [0,1]");
    }
  }

  std::mt19937_64 rng(seed);
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> uniforms(static_cast<std::size_t>(n));
  const auto& k = simd::kernels();
  // Column i, rows i+1..n-1 in order: the strict lower triangle column by
  // column, which is the upper triangle row by row.
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const auto len = static_cast<std::size_t>(n - i - 1);
    for (std::size_t t = 0; t < len; ++t) uniforms[t] = unit_uniform(rng());
    k.bernoulli_mask(uniforms.data(), theta.column(i) + i + 1, adj.col(i).data() + i + 1, len);
  }
  adj.triangularView<Eigen::StrictlyUpper>() = adj.transpose();
  return SymmetricMatrix::from_dense(std::move(adj));
}

double edge_density(const SymmetricMatrix& adjacency) {
  const Eigen::Index n = adjacency.order();
  if (n < 2) throw ValidationError("edge density needs at least two nodes");
  double twice_edges = 0.0;
  const auto& k = simd::kernels();
  for (Eigen::Index j = 0; j < n; ++j) {
    twice_edges += k.sum(adjacency.column(j), static_cast<std::size_t>(n));
  }
  twice_edges -= adjacency.dense().diagonal().sum();
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  return twice_edges / pairs;
}

}  // namespace heic
