#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>
#include <string>

#include "heic/core_model.hpp"
#include "heic/eigencluster.hpp"
#include "heic/errors.hpp"
#include "heic/experiments.hpp"
#include "heic/harmonics.hpp"
#include "heic/spectral.hpp"

using namespace heic;
using namespace heic::experiments;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.n_grid = {60, 90};
  cfg.replicates = 3;
  cfg.seed = 11;
  cfg.workers = 1;
  return cfg;
}

std::string mse_csv(const ExperimentConfig& cfg) {
  std::ostringstream out;
  write_mse_csv(out, run_mse_study(cfg));
  return out.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const ExperimentConfig cfg = parse_config(R"({
    "link": "threshold:0", "d": 3, "rho": 1.0, "n_grid": [200, 500],
    "replicates": 4, "seed": 7, "out": "mse.csv"
  })");
  CHECK(cfg.link.is_threshold());
  CHECK(cfg.d == 3);
  CHECK(cfg.rho.at(500) == 1.0);
  CHECK(cfg.n_grid == std::vector<Eigen::Index>{200, 500});
  CHECK(cfg.replicates == 4);
  CHECK(cfg.seed == 7);
  CHECK(cfg.out == "mse.csv");
  CHECK(cfg.k_max == 150);
  CHECK_FALSE(cfg.timing);

  const ExperimentConfig obj = parse_config(R"({
    "link": {"kind": "affine", "a": 0.5, "b": 0.5},
    "rho": {"rule": "log_n_over_n", "c": 10}, "n_grid": [1000], "dmax": 8, "k_max": 40
  })");
  CHECK(obj.link.is_affine());
  CHECK(obj.rho.at(1000) == doctest::Approx(10.0 * std::log(1000.0) / 1000.0));
  CHECK(obj.rho.at(20) == 1.0);
  CHECK(obj.d_max == 8);
  CHECK(obj.k_max == 40);

  CHECK(parse_config(R"({"link": {"kind": "table", "knots": [-1, 1], "values": [0.2, 0.6]}, "n_grid": [50]})")
            .link.describe() == "table(2 knots)");
}

TEST_CASE("shipped configs parse") {
  const std::string dir = HEIC_CONFIG_DIR;
  CHECK(load_config(dir + "/mse_study.json").n_grid.size() == 4);
  CHECK(load_config(dir + "/dimension_study.json").d_max == 15);
  CHECK(load_config(dir + "/convergence_affine.json").link.is_affine());
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("{"), ValidationError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"n_grid": [100], "colour": "red"})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"n_grid": []})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"n_grid": [100], "rho": 0})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"n_grid": [100], "rho": 1.5})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"n_grid": [100], "replicates": 0})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"n_grid": [100], "link": "cubic:1"})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"n_grid": [100], "link": {"kind": "spline"}})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"n_grid": "100"})"), ValidationError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ValidationError);
}

TEST_CASE("seed derivation") {
  CHECK(derive_seed(1, 200, 0, 0) == derive_seed(1, 200, 0, 0));
  std::set<std::uint64_t> seen;
  for (std::uint64_t n : {200, 500})
    for (std::uint64_t r = 0; r < 20; ++r)
      for (std::uint64_t s = 0; s < 2; ++s) seen.insert(derive_seed(42, n, r, s));
  CHECK(seen.size() == 80);
  CHECK(derive_seed(1, 200, 0, 0) != derive_seed(2, 200, 0, 0));
}

TEST_CASE("worker count") {
  ExperimentConfig cfg = small_config();
  cfg.workers = 3;
  ::unsetenv("HEIC_WORKERS");
  CHECK(worker_count(cfg) == 3);
  ::setenv("HEIC_WORKERS", "2", 1);
  CHECK(worker_count(cfg) == 2);
  ::unsetenv("HEIC_WORKERS");
  cfg.workers = 0;
  CHECK(worker_count(cfg) >= 1);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (const int h : hits) CHECK(h == 1);
}

TEST_CASE("gram_mse") {
  const LatentSample s = sample_uniform_sphere(150, 3, 4);
  const SymmetricMatrix g = gram_population(s);
  CHECK(gram_mse(g, g) == 0.0);

  const SymmetricMatrix a = sample_adjacency(probability_matrix(s, GraphModel(LinkFunction::threshold(0.0), 1.0, 150)), 5);
  const SymmetricMatrix est = harmonic_eigencluster(a, 3).estimate.matrix;
  const double n = 150.0;
  const Eigen::MatrixXd diff = n * est.dense() - n * g.dense();
  CHECK(std::abs(gram_mse(est, g) - diff.squaredNorm() / (n * n)) <= 1e-12);
  CHECK(std::abs(gram_mse(est, g) - (est.dense() - g.dense()).squaredNorm()) <= 1e-12);
  CHECK_THROWS_AS(gram_mse(est, SymmetricMatrix(3)), ValidationError);
}

TEST_CASE("median") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK(std::isnan(median({})));
}

TEST_CASE("MSE study output is independent of worker count") {
  ExperimentConfig one = small_config();
  ExperimentConfig many = small_config();
  many.workers = 4;
  const std::string a = mse_csv(one);
  CHECK(a == mse_csv(many));
  CHECK(a == mse_csv(one));
  CHECK(a.rfind("n,replicate,mse,gap,diameter,seconds\n", 0) == 0);
  CHECK(a.find("# summary n=60 median_mse=") != std::string::npos);
  CHECK(a.find("# summary n=90 median_mse=") != std::string::npos);
  CHECK(a.find(",0.000000\n") != std::string::npos);

  int streamed = 0;
  run_mse_study(one, [&](const MseRecord&) { ++streamed; });
  CHECK(streamed == 6);
}

TEST_CASE("failed replicates become error rows") {
  ExperimentConfig cfg = small_config();
  cfg.n_grid = {4, 60};
  const auto records = run_mse_study(cfg);
  REQUIRE(records.size() == 6);
  CHECK_FALSE(records[0].error.empty());
  CHECK(records[3].error.empty());
  std::ostringstream out;
  write_mse_csv(out, records);
  CHECK(out.str().find("4,0,nan,nan,nan,") != std::string::npos);
  CHECK(out.str().find("# error n=4 replicate=0:") != std::string::npos);
  CHECK(out.str().find("# summary n=4") == std::string::npos);
}

TEST_CASE("dimension study") {
  ExperimentConfig cfg = small_config();
  cfg.n_grid = {300};
  cfg.d_max = 6;
  const DimensionStudy study = run_dimension_study(cfg);
  CHECK(study.replicates.size() == 3);
  CHECK_FALSE(study.true_d_outside_candidates);
  std::ostringstream a;
  write_dimension_csv(a, study);
  std::ostringstream b;
  write_dimension_csv(b, run_dimension_study(cfg));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("replicate,candidate_d,score\n", 0) == 0);
  CHECK(a.str().find("recovery_rate=") != std::string::npos);

  cfg.d_max = 2;
  const DimensionStudy outside = run_dimension_study(cfg);
  CHECK(outside.true_d_outside_candidates);
  CHECK(outside.recovery_rate == 0.0);
  for (const auto& r : outside.replicates) CHECK((r.scan.chosen == 1 || r.scan.chosen == 2));
  std::ostringstream flagged;
  write_dimension_csv(flagged, outside);
  CHECK(flagged.str().find("# flag true_d_outside_candidates") != std::string::npos);

  cfg.n_grid = {100, 200};
  CHECK_THROWS_AS(run_dimension_study(cfg), ValidationError);
}

TEST_CASE("analytic spectrum is at distance zero from itself") {
  const auto flat = analytic_spectrum(LinkFunction::threshold(0.0), 3, 25).flattened();
  CHECK(delta_2(flat, flat) == 0.0);
}

TEST_CASE("convergence study") {
  ExperimentConfig cfg = small_config();
  cfg.k_max = 20;
  const auto records = run_spectrum_convergence(cfg, cfg.k_max);
  REQUIRE(records.size() == 6);
  for (const auto& r : records) CHECK(r.delta2 > 0.0);
  std::ostringstream out;
  write_convergence_csv(out, records);
  CHECK(out.str().rfind("n,replicate,delta2\n", 0) == 0);
  CHECK(out.str().find("# summary n=90 median_delta2=") != std::string::npos);

  cfg.d = 2;
  CHECK_THROWS_AS(run_spectrum_convergence(cfg, 5), ValidationError);
}

TEST_CASE("affine delta_2 sits at the Bernoulli noise floor") {
  // For Theta = (1 + t) / 2 on S^2, the bulk of A/n carries
  // sum lambda^2 ~ E[Theta (1 - Theta)] = 1/6 however large n is.
  ExperimentConfig cfg;
  cfg.link = LinkFunction::affine(0.5, 0.5);
  cfg.n_grid = {600};
  cfg.replicates = 1;
  cfg.workers = 1;
  const auto records = run_spectrum_convergence(cfg, 25);
  CHECK(std::abs(records.front().delta2 - std::sqrt(1.0 / 6.0)) <= 0.02);
}

TEST_CASE("latent covariance concentrates around I/d") {
  // Uniform points on S^{d-1} have E[X X^T] = I/d, so (d/n) sum X X^T -> I.
  const int d = 3;
  const Eigen::Index n = 2000;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const LatentSample s = sample_uniform_sphere(n, d, 500 + seed);
    const Eigen::MatrixXd cov = (static_cast<double>(d) / n) * (s.points.transpose() * s.points);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov - Eigen::MatrixXd::Identity(d, d));
    CHECK(eig.eigenvalues().cwiseAbs().maxCoeff() <= 5.0 * std::sqrt(static_cast<double>(d) / n));
  }
}
