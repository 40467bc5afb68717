#include "heic/dimension.hpp"

#include <numeric>
#include <string>

#include "heic/eigencluster.hpp"
#include "heic/errors.hpp"

namespace heic {

DimensionScan estimate_dimension(const SortedSpectrum& spectrum, int d_max,
                                 std::optional<std::vector<int>> candidates) {
  if (d_max < 1) throw ValidationError("d_max must be at least 1");
  DimensionScan scan;
  if (candidates) {
    scan.candidates = std::move(*candidates);
  } else {
    scan.candidates.resize(static_cast<std::size_t>(d_max));
    std::iota(scan.candidates.begin(), scan.candidates.end(), 1);
  }
  if (scan.candidates.empty()) throw ValidationError("candidate set is empty");
  for (const int d : scan.candidates) {
    if (d < 1) throw ValidationError("candidate dimensions must be positive");
    if (spectrum.size() < d + 2) {
      throw ValidationError("candidate d=" + std::to_string(d) + " needs n >= " + std::to_string(d + 2));
    }
  }

  scan.scores.reserve(scan.candidates.size());
  std::size_t best = 0;
  for (std::size_t c = 0; c < scan.candidates.size(); ++c) {
    scan.scores.push_back(find_cluster(spectrum, scan.candidates[c]).gap);
    const bool better = scan.scores[c] > scan.scores[best] ||
                        (scan.scores[c] == scan.scores[best] && scan.candidates[c] < scan.candidates[best]);
    if (better) best = c;
  }
  scan.chosen = scan.candidates[best];
  return scan;
}

DimensionScan estimate_dimension(const SymmetricMatrix& adjacency, int d_max,
                                 std::optional<std::vector<int>> candidates) {
  if (d_max < 1) throw ValidationError("d_max must be at least 1");
  if (adjacency.order() < d_max + 2) throw ValidationError("graph needs at least d_max + 2 nodes");
  const SortedSpectrum spectrum = symmetric_eigenvalues(normalize_adjacency(adjacency));
  return estimate_dimension(spectrum, d_max, std::move(candidates));
}

}  // namespace heic
