#include "cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "heic/core_model.hpp"
#include "heic/dimension.hpp"
#include "heic/eigencluster.hpp"
#include "heic/errors.hpp"
#include "heic/experiments.hpp"
#include "heic/harmonics.hpp"
#include "heic/io.hpp"
#include "heic/spectral.hpp"

namespace heic::cli {
namespace {

// Writes to `path`, or stdout when it is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ValidationError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct SampleArgs {
  Eigen::Index n = 0;
  int d = 3;
  std::string link = "threshold:0";
  double rho = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t adj_seed = 0;
  std::string out;
  std::string out_theta;
  std::string out_gram;
  std::string out_points;
};

void run_sample(const SampleArgs& a, bool adj_seed_given) {
  const LatentSample sample = sample_uniform_sphere(a.n, a.d, a.seed);
  const SymmetricMatrix theta = probability_matrix(sample, GraphModel(LinkFunction::parse(a.link), a.rho, a.n));
  const std::uint64_t adj_seed =
      adj_seed_given ? a.adj_seed : experiments::derive_seed(a.seed, static_cast<std::uint64_t>(a.n), 0, 1);
  const SymmetricMatrix adjacency = sample_adjacency(theta, adj_seed);
  Output out(a.out);
  io::write_edge_list(out.stream(), adjacency);
  if (!a.out_theta.empty()) io::save_dense_csv(a.out_theta, theta.dense());
  if (!a.out_gram.empty()) io::save_dense_csv(a.out_gram, gram_population(sample).dense());
  if (!a.out_points.empty()) io::save_dense_csv(a.out_points, sample.points);
}

void run_spectrum(const std::string& link, int d, int k_max, const std::string& path) {
  const AnalyticSpectrum spectrum = analytic_spectrum(LinkFunction::parse(link), d, k_max);
  Output out(path);
  out.stream() << "k,eigenvalue,multiplicity,quad_err\n";
  for (const auto& level : spectrum.levels) {
    out.stream() << level.k << ',' << io::format_double(level.eigenvalue) << ',' << level.multiplicity << ','
                 << io::format_double(level.quad_err) << '\n';
  }
}

void run_eig(const std::string& input, const std::string& path) {
  const SortedSpectrum spectrum = symmetric_eigenvalues(io::load_symmetric_csv(input));
  Output out(path);
  out.stream() << "index,eigenvalue\n";
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    out.stream() << i << ',' << io::format_double(spectrum.value(i)) << '\n';
  }
}

void run_estimate(const std::string& input, int d, const std::string& gram_path, const std::string& diag_path) {
  const HeicResult fit = harmonic_eigencluster(io::load_edge_list(input), d);
  if (!gram_path.empty()) io::save_dense_csv(gram_path, fit.estimate.matrix.dense());
  Output out(diag_path);
  const auto& diag = fit.diagnostics;
  out.stream() << "gap,diameter,cluster_start,top_eigenvalue,edge_density\n"
               << io::format_double(diag.gap) << ',' << io::format_double(diag.diameter) << ','
               << diag.cluster_start << ',' << io::format_double(diag.top_eigenvalue) << ','
               << io::format_double(diag.edge_density) << '\n';
  if (diag.degenerate) std::cerr << "warning: selected cluster has zero gap; the estimate is degenerate\n";
}

void run_dimension(const std::string& input, int d_max, const std::string& path) {
  const DimensionScan scan = estimate_dimension(io::load_edge_list(input), d_max);
  Output out(path);
  out.stream() << "candidate_d,score\n";
  for (std::size_t c = 0; c < scan.candidates.size(); ++c) {
    out.stream() << scan.candidates[c] << ',' << io::format_double(scan.scores[c]) << '\n';
  }
  std::cerr << "chosen d = " << scan.chosen << '\n';
}

struct StudyArgs {
  std::string config;
  std::uint64_t seed = 0;
  std::string out;
  int k_max = 0;
  int workers = 0;
};

experiments::ExperimentConfig study_config(const StudyArgs& a, const CLI::App& sub) {
  experiments::ExperimentConfig cfg = experiments::load_config(a.config);
  if (sub.count("--seed")) cfg.seed = a.seed;
  if (sub.count("--out")) cfg.out = a.out;
  if (sub.count("--workers")) cfg.workers = a.workers;
  if (sub.count("--kmax")) cfg.k_max = a.k_max;
  cfg.validate();
  return cfg;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Random geometric graphs on the sphere: simulation, spectra and Gram/dimension recovery"};
  app.require_subcommand(1);

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Simulate a graph and write its edge list");
  sample_cmd->add_option("--n", sample.n, "Number of nodes")->required();
  sample_cmd->add_option("--d", sample.d, "Ambient dimension (sphere S^{d-1})");
  sample_cmd->add_option("--link", sample.link, "threshold:<tau> | affine:<a>:<b> | constant:<c>");
  sample_cmd->add_option("--rho", sample.rho, "Sparsity in (0,1]");
  sample_cmd->add_option("--seed", sample.seed, "Seed for the latent points");
  auto* adj_seed_opt = sample_cmd->add_option("--adj-seed", sample.adj_seed, "Seed for the edges");
  sample_cmd->add_option("--out", sample.out, "Edge list output (stdout if omitted)");
  sample_cmd->add_option("--out-theta", sample.out_theta, "Probability matrix CSV");
  sample_cmd->add_option("--out-gram", sample.out_gram, "Population Gram matrix CSV");
  sample_cmd->add_option("--out-points", sample.out_points, "Latent points CSV");

  std::string spec_link = "threshold:0";
  int spec_d = 3;
  int spec_kmax = 25;
  std::string spec_out;
  std::uint64_t unused_seed = 0;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Analytic eigenvalues of a geometric graphon");
  spectrum_cmd->add_option("--link", spec_link, "Link function");
  spectrum_cmd->add_option("--d", spec_d, "Ambient dimension (>= 3)");
  spectrum_cmd->add_option("--kmax", spec_kmax, "Highest harmonic level");
  spectrum_cmd->add_option("--out", spec_out, "CSV output (stdout if omitted)");
  spectrum_cmd->add_option("--seed", unused_seed, "Accepted for uniformity; unused");

  std::string eig_input;
  std::string eig_out;
  auto* eig_cmd = app.add_subcommand("eig", "Eigenvalues of a symmetric CSV matrix");
  eig_cmd->add_option("--input", eig_input, "Dense CSV matrix")->required();
  eig_cmd->add_option("--out", eig_out, "CSV output (stdout if omitted)");
  eig_cmd->add_option("--seed", unused_seed, "Accepted for uniformity; unused");

  std::string est_input;
  int est_dim = 3;
  std::string est_gram;
  std::string est_diag;
  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate the Gram matrix from an edge list");
  estimate_cmd->add_option("--input", est_input, "Edge list")->required();
  estimate_cmd->add_option("--dim", est_dim, "Latent dimension d")->required();
  estimate_cmd->add_option("--out-gram", est_gram, "Gram estimate CSV");
  estimate_cmd->add_option("--out-diag", est_diag, "Diagnostics CSV (stdout if omitted)");
  estimate_cmd->add_option("--seed", unused_seed, "Accepted for uniformity; unused");

  std::string dim_input;
  int dim_max = 15;
  std::string dim_out;
  auto* dimension_cmd = app.add_subcommand("dimension", "Score candidate latent dimensions");
  dimension_cmd->add_option("--input", dim_input, "Edge list")->required();
  dimension_cmd->add_option("--dmax", dim_max, "Largest candidate dimension");
  dimension_cmd->add_option("--out", dim_out, "CSV output (stdout if omitted)");
  dimension_cmd->add_option("--seed", unused_seed, "Accepted for uniformity; unused");

  StudyArgs study;
  auto add_study = [&](const std::string& name, const std::string& help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--config", study.config, "JSON experiment config")->required();
    cmd->add_option("--seed", study.seed, "Override the config seed");
    cmd->add_option("--out", study.out, "Override the config output path");
    cmd->add_option("--workers", study.workers, "Override the worker count");
    cmd->add_option("--kmax", study.k_max, "Override k_max (convergence study)");
    return cmd;
  };
  auto* mse_cmd = add_study("mse-study", "Gram-matrix MSE across graph sizes");
  auto* dim_study_cmd = add_study("dim-study", "Dimension scores across replicates");
  auto* conv_cmd = add_study("convergence-study", "Spectral distance to the analytic spectrum");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (*sample_cmd) {
      run_sample(sample, adj_seed_opt->count() > 0);
    } else if (*spectrum_cmd) {
      run_spectrum(spec_link, spec_d, spec_kmax, spec_out);
    } else if (*eig_cmd) {
      run_eig(eig_input, eig_out);
    } else if (*estimate_cmd) {
      run_estimate(est_input, est_dim, est_gram, est_diag);
    } else if (*dimension_cmd) {
      run_dimension(dim_input, dim_max, dim_out);
    } else if (*mse_cmd) {
      const auto cfg = study_config(study, *mse_cmd);
      const auto records = experiments::run_mse_study(cfg);
      Output out(cfg.out);
      experiments::write_mse_csv(out.stream(), records);
    } else if (*dim_study_cmd) {
      const auto cfg = study_config(study, *dim_study_cmd);
      const auto result = experiments::run_dimension_study(cfg);
      Output out(cfg.out);
      experiments::write_dimension_csv(out.stream(), result);
    } else if (*conv_cmd) {
      const auto cfg = study_config(study, *conv_cmd);
      const auto records = experiments::run_spectrum_convergence(cfg, cfg.k_max);
      Output out(cfg.out);
      experiments::write_convergence_csv(out.stream(), records);
    }
  } catch (const QuadratureError& e) {
    std::cerr << "numeric error: " << e.what() << " (best estimate " << e.best_estimate() << ")\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace heic::cli
