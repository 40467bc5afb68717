#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "heic/io.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("heic_cli_" + std::to_string(::getpid()));
  TempDir() { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "heic");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return heic::cli::cli_main(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

int data_rows(const std::string& text) {
  int rows = 0;
  for (const auto& line : lines(text)) rows += !line.empty() && line[0] != '#';
  return rows - 1;
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("spectrum subcommand") {
  TempDir dir;
  REQUIRE(run({"spectrum", "--link", "threshold:0", "--d", "3", "--kmax", "3", "--out", dir / "s.csv"}) == 0);
  const auto rows = lines(slurp(dir / "s.csv"));
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "k,eigenvalue,multiplicity,quad_err");
  CHECK(rows[1].rfind("0,0.5", 0) == 0);
  CHECK(rows[2].rfind("1,-0.2", 0) == 0);
  CHECK(rows[4].find(",7,") != std::string::npos);
}

TEST_CASE("sample, estimate, dimension and eig subcommands") {
  TempDir dir;
  REQUIRE(run({"sample", "--n", "120", "--d", "3", "--seed", "9", "--out", dir / "g.edges", "--out-gram",
               dir / "gram.csv", "--out-theta", dir / "theta.csv"}) == 0);
  CHECK(slurp(dir / "g.edges").rfind("n=120\n", 0) == 0);

  REQUIRE(run({"estimate", "--input", dir / "g.edges", "--dim", "3", "--out-gram", dir / "ghat.csv", "--out-diag",
               dir / "diag.csv"}) == 0);
  std::ifstream ghat_in(dir / "ghat.csv");
  const Eigen::MatrixXd ghat = heic::io::read_dense_csv(ghat_in);
  CHECK(ghat.rows() == 120);
  CHECK(ghat.cols() == 120);
  CHECK(ghat.trace() == doctest::Approx(1.0).epsilon(1e-9));
  const auto diag = lines(slurp(dir / "diag.csv"));
  REQUIRE(diag.size() == 2);
  CHECK(diag[0] == "gap,diameter,cluster_start,top_eigenvalue,edge_density");

  REQUIRE(run({"dimension", "--input", dir / "g.edges", "--dmax", "15", "--out", dir / "scores.csv"}) == 0);
  const std::string scores = slurp(dir / "scores.csv");
  CHECK(lines(scores)[0] == "candidate_d,score");
  CHECK(data_rows(scores) == 15);

  REQUIRE(run({"eig", "--input", dir / "theta.csv", "--out", dir / "eig.csv"}) == 0);
  const std::string eig = slurp(dir / "eig.csv");
  CHECK(lines(eig)[0] == "index,eigenvalue");
  CHECK(data_rows(eig) == 120);
}

TEST_CASE("sample is reproducible from its seed") {
  TempDir dir;
  REQUIRE(run({"sample", "--n", "80", "--link", "affine:0.5:0.5", "--seed", "3", "--out", dir / "a.edges"}) == 0);
  REQUIRE(run({"sample", "--n", "80", "--link", "affine:0.5:0.5", "--seed", "3", "--out", dir / "b.edges"}) == 0);
  REQUIRE(run({"sample", "--n", "80", "--link", "affine:0.5:0.5", "--seed", "3", "--adj-seed", "5", "--out", dir / "c.edges"}) == 0);
  CHECK(slurp(dir / "a.edges") == slurp(dir / "b.edges"));
  CHECK(slurp(dir / "a.edges") != slurp(dir / "c.edges"));
}

TEST_CASE("study subcommands write deterministic CSV") {
  TempDir dir;
  write_file(dir / "cfg.json",
             R"({"link": "threshold:0", "d": 3, "rho": 1.0, "n_grid": [60, 80], "replicates": 2, "seed": 4, "out": ")" +
                 (dir / "mse.csv") + R"("})");
  REQUIRE(run({"mse-study", "--config", dir / "cfg.json"}) == 0);
  const std::string first = slurp(dir / "mse.csv");
  CHECK(data_rows(first) == 4);
  CHECK(first.find("# summary n=80") != std::string::npos);
  REQUIRE(run({"mse-study", "--config", dir / "cfg.json", "--workers", "3", "--out", dir / "mse2.csv"}) == 0);
  CHECK(slurp(dir / "mse2.csv") == first);

  REQUIRE(run({"convergence-study", "--config", dir / "cfg.json", "--kmax", "10", "--out", dir / "c1.csv"}) == 0);
  REQUIRE(run({"convergence-study", "--config", dir / "cfg.json", "--kmax", "10", "--out", dir / "c2.csv"}) == 0);
  CHECK(data_rows(slurp(dir / "c1.csv")) == 4);
  CHECK(slurp(dir / "c1.csv") == slurp(dir / "c2.csv"));

  write_file(dir / "dim.json", R"({"n_grid": [100], "replicates": 2, "dmax": 5, "seed": 1})");
  REQUIRE(run({"dim-study", "--config", dir / "dim.json", "--out", dir / "d1.csv"}) == 0);
  REQUIRE(run({"dim-study", "--config", dir / "dim.json", "--out", dir / "d2.csv"}) == 0);
  CHECK(data_rows(slurp(dir / "d1.csv")) == 10);
  CHECK(slurp(dir / "d1.csv") == slurp(dir / "d2.csv"));
}

TEST_CASE("exit codes") {
  TempDir dir;
  CHECK(run({}) == 1);
  CHECK(run({"spectrum", "--bogus"}) == 1);
  CHECK(run({"frobnicate"}) == 1);
  CHECK(run({"estimate", "--input", dir / "missing.edges", "--dim", "3"}) == 1);
  CHECK(run({"spectrum", "--d", "2", "--out", dir / "x.csv"}) == 1);
  CHECK(run({"sample", "--n", "10", "--link", "cubic:2", "--out", dir / "x.edges"}) == 1);
  CHECK(run({"sample", "--n", "10", "--rho", "0", "--out", dir / "x.edges"}) == 1);
  write_file(dir / "bad.json", R"({"n_grid": [50], "unknown": 1})");
  CHECK(run({"mse-study", "--config", dir / "bad.json"}) == 1);

  write_file(dir / "inf.csv", "inf,1\n1,0\n");
  CHECK(run({"eig", "--input", dir / "inf.csv", "--out", dir / "e.csv"}) == 2);
}
