#pragma once

// Seeded Monte-Carlo studies over simulated sphere graphs.
//
// Each (n, replicate) pair owns its RNG streams, derived by hashing
// (base seed, n, replicate, stream), so results do not depend on how many
// workers run or in which order replicates finish. Records are sorted by
// (n, replicate) before anything is written.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "heic/core_model.hpp"
#include "heic/dimension.hpp"
#include "heic/symmetric_matrix.hpp"

namespace heic::experiments {

struct RhoRule {
  enum class Kind { Constant, LogOverN };
  Kind kind = Kind::Constant;
  /// The constant itself, or c in min(1, c log(n) / n).
  double value = 1.0;

  double at(Eigen::Index n) const;
};

struct ExperimentConfig {
  LinkFunction link = LinkFunction::threshold(0.0);
  int d = 3;
  RhoRule rho;
  std::vector<Eigen::Index> n_grid;
  int replicates = 20;
  std::uint64_t seed = 0;
  std::string out;
  int d_max = 15;
  int k_max = 150;
  /// 0 means one per hardware thread. HEIC_WORKERS overrides either way.
  int workers = 0;
  /// Fill the `seconds` column with wall time. Off by default so study CSVs
  /// are byte-reproducible.
  bool timing = false;

  void validate() const;
};

/// Reads the JSON config: keys link, d, rho, n_grid, replicates, seed, out,
/// and optionally dmax, k_max, workers, timing. Unknown keys are rejected.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t n, std::uint64_t replicate, std::uint64_t stream);
int worker_count(const ExperimentConfig& cfg);

/// Runs task(0..count-1) on up to `workers` threads.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task);

struct SimulatedGraph {
  LatentSample sample;
  SymmetricMatrix theta;
  SymmetricMatrix adjacency;
  double rho = 1.0;
};

SimulatedGraph simulate_replicate(const ExperimentConfig& cfg, Eigen::Index n, int replicate);

/// ||n G_hat - n G*||_F^2 / n^2: mean squared error of the inner products.
double gram_mse(const SymmetricMatrix& estimate, const SymmetricMatrix& population);

double median(std::vector<double> values);

struct MseRecord {
  Eigen::Index n = 0;
  int replicate = 0;
  double mse = 0.0;
  double gap = 0.0;
  double diameter = 0.0;
  double seconds = 0.0;
  std::string error;
};

std::vector<MseRecord> run_mse_study(const ExperimentConfig& cfg,
                                     const std::function<void(const MseRecord&)>& on_record = {});
void write_mse_csv(std::ostream& out, const std::vector<MseRecord>& records);

struct DimensionReplicate {
  int replicate = 0;
  DimensionScan scan;
  std::string error;
};

struct DimensionStudy {
  Eigen::Index n = 0;
  int true_d = 0;
  std::vector<DimensionReplicate> replicates;
  double recovery_rate = 0.0;
  bool true_d_outside_candidates = false;
};

/// Uses the single n in cfg.n_grid and candidates 1..cfg.d_max.
DimensionStudy run_dimension_study(const ExperimentConfig& cfg);
void write_dimension_csv(std::ostream& out, const DimensionStudy& study);

struct ConvergenceRecord {
  Eigen::Index n = 0;
  int replicate = 0;
  double delta2 = 0.0;
  std::string error;
};

/// delta_2 between the spectrum of A / (n rho) and the analytic spectrum of
/// the link truncated at k_max (zero beyond).
std::vector<ConvergenceRecord> run_spectrum_convergence(const ExperimentConfig& cfg, int k_max);
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records);

}  // namespace heic::experiments
