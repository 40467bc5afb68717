#include "heic/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "heic/eigencluster.hpp"
#include "heic/errors.hpp"
#include "heic/harmonics.hpp"
#include "heic/io.hpp"
#include "heic/kernels.hpp"
#include "heic/spectral.hpp"

namespace heic::experiments {
namespace {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

LinkFunction link_from_json(const json& j) {
  if (j.is_string()) return LinkFunction::parse(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind")) throw ValidationError("config 'link' must be a string or an object with 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "threshold") return LinkFunction::threshold(j.at("tau").get<double>());
  if (kind == "affine") return LinkFunction::affine(j.at("a").get<double>(), j.at("b").get<double>());
  if (kind == "constant") return LinkFunction::constant(j.at("c").get<double>());
  if (kind == "table") {
    return LinkFunction::table(j.at("knots").get<std::vector<double>>(), j.at("values").get<std::vector<double>>());
  }
  throw ValidationError("unknown link kind '" + kind + "'");
}

RhoRule rho_from_json(const json& j) {
  if (j.is_number()) return {RhoRule::Kind::Constant, j.get<double>()};
  if (j.is_object() && j.value("rule", "") == "log_n_over_n") {
    return {RhoRule::Kind::LogOverN, j.at("c").get<double>()};
  }
  throw ValidationError("config 'rho' must be a number or {\"rule\": \"log_n_over_n\", \"c\": <c>}");
}

std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

const std::string& fmt_or_nan(const std::string& error, const std::string& value) {
  static const std::string nan = "nan";
  return error.empty() ? value : nan;
}

}  // namespace

double RhoRule::at(Eigen::Index n) const {
  if (kind == Kind::Constant) return value;
  const double nd = static_cast<double>(n);
  return std::min(1.0, value * std::log(nd) / nd);
}

void ExperimentConfig::validate() const {
  if (n_grid.empty()) throw ValidationError("n_grid must not be empty");
  for (const auto n : n_grid) {
    if (n < 2) throw ValidationError("every n in n_grid must be at least 2");
  }
  if (d < 2) throw ValidationError("d must be at least 2");
  if (replicates < 1) throw ValidationError("replicates must be at least 1");
  if (d_max < 1) throw ValidationError("dmax must be at least 1");
  if (k_max < 1) throw ValidationError("k_max must be at least 1");
  if (workers < 0) throw ValidationError("workers must be non-negative");
  if (rho.kind == RhoRule::Kind::Constant && !(rho.value > 0.0 && rho.value <= 1.0)) {
    throw ValidationError("constant rho must lie in (0,1]");
  }
  if (rho.kind == RhoRule::Kind::LogOverN && !(rho.value > 0.0)) {
    throw ValidationError("rho rule constant must be positive");
  }
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  static const std::set<std::string> known{"link", "d",    "rho",   "n_grid",  "replicates", "seed",
                                           "out",  "dmax", "k_max", "workers", "timing"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) throw ValidationError("unknown config key '" + item.key() + "'");
  }
  ExperimentConfig cfg;
  try {
    if (j.contains("link")) cfg.link = link_from_json(j.at("link"));
    if (j.contains("d")) cfg.d = j.at("d").get<int>();
    if (j.contains("rho")) cfg.rho = rho_from_json(j.at("rho"));
    if (j.contains("n_grid")) cfg.n_grid = j.at("n_grid").get<std::vector<Eigen::Index>>();
    if (j.contains("replicates")) cfg.replicates = j.at("replicates").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    if (j.contains("dmax")) cfg.d_max = j.at("dmax").get<int>();
    if (j.contains("k_max")) cfg.k_max = j.at("k_max").get<int>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
    if (j.contains("timing")) cfg.timing = j.at("timing").get<bool>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad config value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t n, std::uint64_t replicate, std::uint64_t stream) {
  std::uint64_t h = splitmix64(base);
  h = splitmix64(h ^ n);
  h = splitmix64(h ^ replicate);
  return splitmix64(h ^ stream);
}

int worker_count(const ExperimentConfig& cfg) {
  if (const char* env = std::getenv("HEIC_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  if (cfg.workers > 0) return cfg.workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task) {
  const auto threads = static_cast<std::size_t>(std::max(1, workers));
  if (threads == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < std::min(threads, count); ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  }
}

SimulatedGraph simulate_replicate(const ExperimentConfig& cfg, Eigen::Index n, int replicate) {
  const auto un = static_cast<std::uint64_t>(n);
  const auto ur = static_cast<std::uint64_t>(replicate);
  SimulatedGraph g;
  g.rho = cfg.rho.at(n);
  g.sample = sample_uniform_sphere(n, cfg.d, derive_seed(cfg.seed, un, ur, 0));
  g.theta = probability_matrix(g.sample, GraphModel(cfg.link, g.rho, n));
  g.adjacency = sample_adjacency(g.theta, derive_seed(cfg.seed, un, ur, 1));
  return g;
}

double gram_mse(const SymmetricMatrix& estimate, const SymmetricMatrix& population) {
  const Eigen::Index n = estimate.order();
  if (population.order() != n || n == 0) throw ValidationError("Gram matrices must have the same non-zero order");
  const auto& k = simd::kernels();
  const double nd = static_cast<double>(n);
  std::vector<double> a(static_cast<std::size_t>(n));
  std::vector<double> b(static_cast<std::size_t>(n));
  double total = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    std::copy_n(estimate.column(j), n, a.begin());
    std::copy_n(population.column(j), n, b.begin());
    k.scale(a.data(), nd, a.size());
    k.scale(b.data(), nd, b.size());
    total += k.squared_distance(a.data(), b.data(), a.size());
  }
  return total / (nd * nd);
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

std::vector<MseRecord> run_mse_study(const ExperimentConfig& cfg, const std::function<void(const MseRecord&)>& on_record) {
  cfg.validate();
  std::vector<MseRecord> records(cfg.n_grid.size() * static_cast<std::size_t>(cfg.replicates));
  std::mutex callback_mutex;
  parallel_for(records.size(), worker_count(cfg), [&](std::size_t idx) {
    MseRecord& r = records[idx];
    r.n = cfg.n_grid[idx / static_cast<std::size_t>(cfg.replicates)];
    r.replicate = static_cast<int>(idx % static_cast<std::size_t>(cfg.replicates));
    const auto start = std::chrono::steady_clock::now();
    try {
      const SimulatedGraph g = simulate_replicate(cfg, r.n, r.replicate);
      const HeicResult fit = harmonic_eigencluster(g.adjacency, cfg.d);
      r.mse = gram_mse(fit.estimate.matrix, gram_population(g.sample));
      r.gap = fit.diagnostics.gap;
      r.diameter = fit.diagnostics.diameter;
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    if (cfg.timing) r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_record) {
      std::lock_guard lock(callback_mutex);
      on_record(r);
    }
  });
  std::sort(records.begin(), records.end(), [](const MseRecord& a, const MseRecord& b) {
    return std::tie(a.n, a.replicate) < std::tie(b.n, b.replicate);
  });
  return records;
}

void write_mse_csv(std::ostream& out, const std::vector<MseRecord>& records) {
  out << "n,replicate,mse,gap,diameter,seconds\n";
  std::map<Eigen::Index, std::vector<double>> by_n;
  for (const auto& r : records) {
    out << r.n << ',' << r.replicate << ',' << fmt_or_nan(r.error, io::format_double(r.mse)) << ','
        << fmt_or_nan(r.error, io::format_double(r.gap)) << ',' << fmt_or_nan(r.error, io::format_double(r.diameter))
        << ',' << format_seconds(r.seconds) << '\n';
    if (!r.error.empty()) {
      out << "# error n=" << r.n << " replicate=" << r.replicate << ": " << r.error << '\n';
    } else {
      by_n[r.n].push_back(r.mse);
    }
  }
  for (const auto& [n, mses] : by_n) {
    out << "# summary n=" << n << " median_mse=" << io::format_double(median(mses)) << " ok=" << mses.size()
        << '\n';
  }
}

DimensionStudy run_dimension_study(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.n_grid.size() != 1) throw ValidationError("dimension study takes exactly one n in n_grid");
  DimensionStudy study;
  study.n = cfg.n_grid.front();
  study.true_d = cfg.d;
  study.true_d_outside_candidates = cfg.d > cfg.d_max;
  study.replicates.resize(static_cast<std::size_t>(cfg.replicates));
  parallel_for(study.replicates.size(), worker_count(cfg), [&](std::size_t idx) {
    DimensionReplicate& r = study.replicates[idx];
    r.replicate = static_cast<int>(idx);
    try {
      const SimulatedGraph g = simulate_replicate(cfg, study.n, r.replicate);
      r.scan = estimate_dimension(g.adjacency, cfg.d_max);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  });
  int hits = 0;
  for (const auto& r : study.replicates) hits += r.error.empty() && r.scan.chosen == cfg.d;
  study.recovery_rate = static_cast<double>(hits) / static_cast<double>(cfg.replicates);
  return study;
}

void write_dimension_csv(std::ostream& out, const DimensionStudy& study) {
  out << "replicate,candidate_d,score\n";
  for (const auto& r : study.replicates) {
    if (!r.error.empty()) {
      out << "# error replicate=" << r.replicate << ": " << r.error << '\n';
      continue;
    }
    for (std::size_t c = 0; c < r.scan.candidates.size(); ++c) {
      out << r.replicate << ',' << r.scan.candidates[c] << ',' << io::format_double(r.scan.scores[c]) << '\n';
    }
  }
  for (const auto& r : study.replicates) {
    if (r.error.empty()) out << "# chosen replicate=" << r.replicate << " d=" << r.scan.chosen << '\n';
  }
  out << "# summary n=" << study.n << " true_d=" << study.true_d
      << " recovery_rate=" << io::format_double(study.recovery_rate) << '\n';
  if (study.true_d_outside_candidates) out << "# flag true_d_outside_candidates\n";
}

std::vector<ConvergenceRecord> run_spectrum_convergence(const ExperimentConfig& cfg, int k_max) {
  cfg.validate();
  if (cfg.d < 3) throw ValidationError("spectrum convergence needs d >= 3");
  const std::vector<double> analytic = analytic_spectrum(cfg.link, cfg.d, k_max).flattened();
  std::vector<ConvergenceRecord> records(cfg.n_grid.size() * static_cast<std::size_t>(cfg.replicates));
  parallel_for(records.size(), worker_count(cfg), [&](std::size_t idx) {
    ConvergenceRecord& r = records[idx];
    r.n = cfg.n_grid[idx / static_cast<std::size_t>(cfg.replicates)];
    r.replicate = static_cast<int>(idx % static_cast<std::size_t>(cfg.replicates));
    try {
      const SimulatedGraph g = simulate_replicate(cfg, r.n, r.replicate);
      const double scale = 1.0 / (static_cast<double>(r.n) * g.rho);
      const SortedSpectrum observed = symmetric_eigenvalues(g.adjacency.scaled(scale));
      const Eigen::VectorXd& v = observed.values();
      r.delta2 = delta_2(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())), analytic);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  });
  std::sort(records.begin(), records.end(), [](const ConvergenceRecord& a, const ConvergenceRecord& b) {
    return std::tie(a.n, a.replicate) < std::tie(b.n, b.replicate);
  });
  return records;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records) {
  out << "n,replicate,delta2\n";
  std::map<Eigen::Index, std::vector<double>> by_n;
  for (const auto& r : records) {
    out << r.n << ',' << r.replicate << ',' << fmt_or_nan(r.error, io::format_double(r.delta2)) << '\n';
    if (!r.error.empty()) {
      out << "# error n=" << r.n << " replicate=" << r.replicate << ": " << r.error << '\n';
    } else {
      by_n[r.n].push_back(r.delta2);
    }
  }
  for (const auto& [n, values] : by_n) {
    out << "# summary n=" << n << " median_delta2=" << io::format_double(median(values)) << '\n';
  }
}

}  // namespace heic::experiments
