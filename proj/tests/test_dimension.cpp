#include <doctest.h>

#include <vector>

#include "heic/core_model.hpp"
#include "heic/dimension.hpp"
#include "heic/eigencluster.hpp"
#include "heic/errors.hpp"
#include "heic/harmonics.hpp"
#include "heic/spectral.hpp"

using namespace heic;

namespace {

SymmetricMatrix simulate(Eigen::Index n, std::uint64_t seed) {
  const LatentSample latent = sample_uniform_sphere(n, 3, seed);
  return sample_adjacency(probability_matrix(latent, GraphModel(LinkFunction::threshold(0.0), 1.0, n)), seed + 1000);
}

}  // namespace

TEST_CASE("dimension scan on the exact analytic spectrum") {
  const std::vector<double> flat = analytic_spectrum(LinkFunction::threshold(0.0), 3, 3).flattened();
  REQUIRE(flat.size() == 16);
  const DimensionScan scan = estimate_dimension(SortedSpectrum(std::span<const double>(flat)), 6);
  CHECK(scan.candidates == std::vector<int>{1, 2, 3, 4, 5, 6});
  CHECK(scan.chosen == 3);
  CHECK(scan.scores[2] == doctest::Approx(0.25).epsilon(1e-10));
  for (const double s : scan.scores) CHECK(s >= 0.0);
}

TEST_CASE("all-equal spectrum scores zero everywhere and picks the smallest candidate") {
  const std::vector<double> flat(10, 0.2);
  const DimensionScan scan = estimate_dimension(SortedSpectrum(std::span<const double>(flat)), 5);
  for (const double s : scan.scores) CHECK(s == 0.0);
  CHECK(scan.chosen == 1);

  const DimensionScan subset = estimate_dimension(SortedSpectrum(std::span<const double>(flat)), 5, std::vector<int>{4, 2});
  CHECK(subset.chosen == 2);
}

TEST_CASE("dimension scan validates its inputs") {
  const std::vector<double> flat(6, 0.1);
  const SortedSpectrum s{std::span<const double>(flat)};
  CHECK_THROWS_AS(estimate_dimension(s, 0), ValidationError);
  CHECK_THROWS_AS(estimate_dimension(s, 5), ValidationError);
  CHECK_THROWS_AS(estimate_dimension(s, 3, std::vector<int>{}), ValidationError);
  CHECK_THROWS_AS(estimate_dimension(s, 3, std::vector<int>{0, 2}), ValidationError);
}

TEST_CASE("one decomposition per scan, scores equal per-candidate searches") {
  const SymmetricMatrix a = simulate(400, 5);
  const auto before = eigensolver_calls();
  const DimensionScan scan = estimate_dimension(a, 15);
  CHECK(eigensolver_calls() == before + 1);
  CHECK(scan.candidates.size() == 15);

  const SortedSpectrum spec = symmetric_eigenvalues(normalize_adjacency(a));
  for (std::size_t c = 0; c < scan.candidates.size(); ++c) {
    CHECK(scan.scores[c] == find_cluster(spec, scan.candidates[c]).gap);
  }
  // Full HEiC runs use the eigenvector solver path, so agreement is to rounding.
  for (const int d : {2, 3, 7}) {
    const HeicResult fit = harmonic_eigencluster(a, d);
    CHECK(std::abs(fit.diagnostics.gap - scan.scores[static_cast<std::size_t>(d - 1)]) <= 1e-12);
  }

  const DimensionScan again = estimate_dimension(a, 15);
  CHECK(again.scores == scan.scores);
  CHECK(again.chosen == scan.chosen);
}

TEST_CASE("dimension recovered on simulated graphs (n = 1000)") {
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    if (estimate_dimension(simulate(1000, seed), 15).chosen == 3) ++hits;
  }
  CHECK(hits >= 9);
}
