#pragma once

#include <optional>
#include <vector>

#include "heic/spectral.hpp"
#include "heic/symmetric_matrix.hpp"

namespace heic {

/// Cluster-gap score of every candidate dimension; `chosen` is the argmax
/// (smallest candidate on ties).
struct DimensionScan {
  std::vector<int> candidates;
  std::vector<double> scores;
  int chosen = 0;
};

/// Scores candidates on an existing spectrum. Candidates default to 1..d_max.
DimensionScan estimate_dimension(const SortedSpectrum& spectrum, int d_max,
                                 std::optional<std::vector<int>> candidates = std::nullopt);

/// Decomposes A/n once (eigenvalues only) and scores every candidate on it.
DimensionScan estimate_dimension(const SymmetricMatrix& adjacency, int d_max,
                                 std::optional<std::vector<int>> candidates = std::nullopt);

}  // namespace heic
