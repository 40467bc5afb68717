#pragma once

// Harmonic EigenCluster: find the d consecutive eigenvalues of T = A/n that
// sit apart from the rest of the spectrum (the level-1 harmonics) and turn
// their eigenvectors into a Gram estimate (1/d) V V^T.
//
// Sorted positions are 0-based. Position 0, the top eigenvalue, tracks the
// constant harmonic and is never part of a cluster.

#include <optional>
#include <vector>

#include "heic/spectral.hpp"
#include "heic/symmetric_matrix.hpp"

namespace heic {

struct ClusterSelection {
  int d = 0;
  Eigen::Index start = 0;
  double gap = 0.0;
  double diameter = 0.0;

  std::vector<Eigen::Index> indices() const;
};

struct GramEstimate {
  SymmetricMatrix matrix;
  int d = 0;
  ClusterSelection cluster;
  /// Factor applied to V V^T (1/d).
  double scale = 0.0;
};

/// |lambda_i - lambda_{i-1}| for 1 <= i <= n-1.
double left_gap(const SortedSpectrum& spec, Eigen::Index i);
/// left_gap(i + 1) for 0 <= i <= n-2.
double right_gap(const SortedSpectrum& spec, Eigen::Index i);

/// Distance from the window {i, ..., i+d-1} to the nearest eigenvalue outside
/// it: min(left(i), left(i+d)), or left(i) alone when the window ends at n-1.
double cluster_gap(const SortedSpectrum& spec, Eigen::Index i, int d);

/// The window of d consecutive positions (start >= 1) with the largest
/// cluster_gap; the first one wins ties. Needs n >= d + 2.
ClusterSelection find_cluster(const SortedSpectrum& spec, int d);

GramEstimate gram_estimate(const SortedSpectrum& spec, const ClusterSelection& cluster);

struct EventReport {
  bool holds = false;
  double diameter = 0.0;
  double gap = 0.0;
  /// rho * gap_analytic / 2
  double threshold = 0.0;
};

/// Simulation-only check of the separation event: the cluster's diameter is
/// below rho*Delta/2 and its gap is at least rho*Delta/2.
EventReport event_e_check(const SortedSpectrum& spec, const ClusterSelection& cluster,
                          double gap_analytic, double rho);

/// Heuristic bound on ||A/n - Theta/n||_op:
/// 3 sqrt(2 D0) / n + sqrt(log(n / alpha)) / n, D0 = max_i sum_j Theta_ij (1 - Theta_ij).
/// The universal constant of the tail term is taken as 1.
double noise_bound(const SymmetricMatrix& theta, double alpha);

struct HeicDiagnostics {
  double gap = 0.0;
  double diameter = 0.0;
  Eigen::Index cluster_start = 0;
  double top_eigenvalue = 0.0;
  double edge_density = 0.0;
  /// Set when the selected cluster has zero gap (e.g. an empty graph): the
  /// estimate is then an arbitrary choice among equally good windows.
  bool degenerate = false;
  std::optional<EventReport> event;
};

struct HeicOptions {
  /// When both are set the result carries an event_e_check report.
  std::optional<double> gap_analytic;
  std::optional<double> rho;
};

struct HeicResult {
  GramEstimate estimate;
  HeicDiagnostics diagnostics;
  SortedSpectrum spectrum;
};

/// normalize_adjacency -> symmetric_eig -> find_cluster -> gram_estimate.
HeicResult harmonic_eigencluster(const SymmetricMatrix& adjacency, int d, const HeicOptions& options = {});

}  // namespace heic
