#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "heic/core_model.hpp"
#include "heic/eigencluster.hpp"
#include "heic/errors.hpp"
#include "heic/kernels.hpp"

namespace heic {

std::vector<Eigen::Index> ClusterSelection::indices() const {
  std::vector<Eigen::Index> out(static_cast<std::size_t>(d));
  std::iota(out.begin(), out.end(), start);
  return out;
}

double left_gap(const SortedSpectrum& spec, Eigen::Index i) {
  if (i < 1 || i >= spec.size()) {
    throw ValidationError("left_gap index " + std::to_string(i) + " outside 1.." + std::to_string(spec.size() - 1));
  }
  return std::abs(spec.value(i) - spec.value(i - 1));
}

double right_gap(const SortedSpectrum& spec, Eigen::Index i) {
  if (i < 0 || i + 1 >= spec.size()) {
    throw ValidationError("right_gap index " + std::to_string(i) + " outside 0.." + std::to_string(spec.size() - 2));
  }
  return left_gap(spec, i + 1);
}

double cluster_gap(const SortedSpectrum& spec, Eigen::Index i, int d) {
  if (d < 1) throw ValidationError("cluster size must be at least 1");
  const Eigen::Index n = spec.size();
  if (i < 1) throw ValidationError("cluster window may not include the top eigenvalue (position 0)");
  if (i + d > n) throw ValidationError("cluster window runs past the end of the spectrum");
  const double left = left_gap(spec, i);
  if (i + d == n) return left;
  return std::min(left, left_gap(spec, i + d));
}

ClusterSelection find_cluster(const SortedSpectrum& spec, int d) {
  if (d < 1) throw ValidationError("cluster size must be at least 1");
  const Eigen::Index n = spec.size();
  if (n < d + 2) {
    throw ValidationError("spectrum of size " + std::to_string(n) + " is too small for a cluster of " +
                          std::to_string(d) + " (need n >= d + 2)");
  }
  ClusterSelection best{d, 1, cluster_gap(spec, 1, d), 0.0};
  for (Eigen::Index i = 2; i + d <= n; ++i) {
    const double g = cluster_gap(spec, i, d);
    if (g > best.gap) {
      best.start = i;
      best.gap = g;
    }
  }
  best.diameter = spec.value(best.start) - spec.value(best.start + d - 1);
  return best;
}

GramEstimate gram_estimate(const SortedSpectrum& spec, const ClusterSelection& cluster) {
  if (!spec.has_vectors()) throw ValidationError("gram_estimate needs eigenvectors");
  if (cluster.d < 1 || cluster.start < 1 || cluster.start + cluster.d > spec.size()) {
    throw ValidationError("cluster does not fit the spectrum");
  }
  const Eigen::Index n = spec.size();
  const double scale = 1.0 / cluster.d;
  const auto v = spec.vectors().middleCols(cluster.start, cluster.d);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  g.selfadjointView<Eigen::Upper>().rankUpdate(v, scale);
  return {SymmetricMatrix::from_upper(std::move(g)), cluster.d, cluster, scale};
}

EventReport event_e_check(const SortedSpectrum& spec, const ClusterSelection& cluster, double gap_analytic,
                          double rho) {
  if (!(gap_analytic > 0.0)) throw ValidationError("event check needs a positive analytic gap");
  if (!(rho > 0.0)) throw ValidationError("event check needs rho > 0");
  EventReport r;
  r.diameter = spec.value(cluster.start) - spec.value(cluster.start + cluster.d - 1);
  r.gap = cluster_gap(spec, cluster.start, cluster.d);
  r.threshold = rho * gap_analytic / 2.0;
  r.holds = r.diameter < r.threshold && r.gap >= r.threshold;
  return r;
}

double noise_bound(const SymmetricMatrix& theta, double alpha) {
  const Eigen::Index n = theta.order();
  if (n < 1) throw ValidationError("noise bound needs a non-empty matrix");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0,1)");
  const Eigen::MatrixXd& t = theta.dense();
  const double d0 = (t.array() * (1.0 - t.array())).colwise().sum().maxCoeff();
  const double nd = static_cast<double>(n);
  return 3.0 * std::sqrt(2.0 * d0) / nd + std::sqrt(std::log(nd / alpha)) / nd;
}

HeicResult harmonic_eigencluster(const SymmetricMatrix& adjacency, int d, const HeicOptions& options) {
  const Eigen::Index n = adjacency.order();
  if (d < 1) throw ValidationError("dimension must be at least 1");
  if (n < d + 2) throw ValidationError("graph needs at least d + 2 nodes");

  SortedSpectrum spectrum = symmetric_eig(normalize_adjacency(adjacency));
  const ClusterSelection cluster = find_cluster(spectrum, d);

  HeicDiagnostics diag;
  diag.gap = cluster.gap;
  diag.diameter = cluster.diameter;
  diag.cluster_start = cluster.start;
  diag.top_eigenvalue = spectrum.value(0);
  diag.edge_density = edge_density(adjacency);
  diag.degenerate = cluster.gap <= 0.0;
  if (options.gap_analytic && options.rho) {
    diag.event = event_e_check(spectrum, cluster, *options.gap_analytic, *options.rho);
  }
  GramEstimate estimate = gram_estimate(spectrum, cluster);
  return {std::move(estimate), diag, std::move(spectrum)};
}

}  // namespace heic
