// wonham: showcase, sweep, validate and spikes runs of the two-state filter.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

#include "wonham/csv.hpp"
#include "wonham/experiments.hpp"
#include "wonham/validate.hpp"

namespace {

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> replicas;
  std::string out_dir = "out";
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "root seed (overrides the config)");
  cmd->add_option("--out", c.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--replicas", c.replicas, "replica count (overrides the config)");
  cmd->add_option("--threads", c.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

wonham::ExperimentConfig load(const Common& c) {
  wonham::ExperimentConfig cfg =
      c.config_path.empty() ? wonham::ExperimentConfig() : wonham::ExperimentConfig::from_file(c.config_path);
  if (c.seed) cfg = cfg.with_seed(*c.seed);
  if (c.replicas) cfg = cfg.with_replicas(*c.replicas);
  for (const auto& w : cfg.warnings()) std::cerr << "warning: " << w << '\n';
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong-noise Wonham filter: spikes, fixed-lag smoothing and its phase transition"};
  app.set_version_flag("--version", wonham::version_string());
  app.require_subcommand(1);

  Common common;

  auto* showcase = app.add_subcommand("showcase", "one hidden path rendered at gamma = 100 and the config gamma");
  add_common(showcase, common);
  std::optional<double> showcase_gamma;
  std::vector<double> showcase_cs = wonham::kDefaultCValues;
  std::size_t stride = 1;
  showcase->add_option("--gamma", showcase_gamma, "gamma of the filter panels");
  showcase->add_option("--cvalues", showcase_cs, "smoothing coefficients C")->delimiter(',');
  showcase->add_option("--stride", stride, "keep every stride-th row")->check(CLI::PositiveNumber);

  auto* sweep = app.add_subcommand("sweep", "error probability and smoothing geometry over (gamma, C)");
  add_common(sweep, common);
  std::vector<double> sweep_gammas;
  std::vector<double> sweep_cs = wonham::kDefaultCValues;
  double sweep_t = 1.0;
  std::uint64_t geometry_replicas = 0;
  std::optional<double> sweep_pi0;
  sweep->add_option("--pi0", sweep_pi0, "filter start of the error-probability runs");
  sweep->add_option("--gamma", sweep_gammas, "gamma values (default: config gamma)")->delimiter(',');
  sweep->add_option("--cvalues", sweep_cs, "smoothing coefficients C")->delimiter(',');
  sweep->add_option("--time", sweep_t, "horizon t of the error probability")->capture_default_str();
  sweep->add_option("--geometry-replicas", geometry_replicas,
                    "replicas on [0,H] for the graph metrics (0 skips them)")
      ->capture_default_str();

  auto* validate = app.add_subcommand("validate", "run the invariant suite");
  add_common(validate, common);

  auto* spikes = app.add_subcommand("spikes", "sample the limiting spike process");
  add_common(spikes, common);
  double epsilon = 0.5;
  std::uint64_t samples = 1;
  spikes->add_option("--epsilon", epsilon, "spike truncation level")->capture_default_str();
  spikes->add_option("--samples", samples, "number of independent samples")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*showcase) {
      wonham::ExperimentConfig cfg = load(common);
      if (showcase_gamma) cfg = cfg.with_gamma(*showcase_gamma);
      wonham::ShowcaseOptions opt;
      opt.c_values = showcase_cs;
      opt.stride = stride;
      for (const auto& p : wonham::run_showcase(cfg, common.out_dir, opt)) std::cout << p << '\n';
    } else if (*sweep) {
      const wonham::ExperimentConfig cfg = load(common);
      wonham::SweepOptions opt;
      opt.gammas = sweep_gammas.empty() ? std::vector<double>{cfg.gamma()} : sweep_gammas;
      opt.c_values = sweep_cs;
      opt.replicas = cfg.replicas();
      opt.geometry_replicas = geometry_replicas;
      opt.t = sweep_t;
      opt.pi0 = sweep_pi0;
      opt.threads = common.threads;
      const wonham::SweepResult res = wonham::run_sweep(cfg, opt);
      std::filesystem::create_directories(common.out_dir);
      const auto dir = std::filesystem::path(common.out_dir);
      wonham::write_sweep_csv((dir / "sweep.csv").string(), cfg, res);
      wonham::write_sweep_timing_csv((dir / "sweep_timing.csv").string(), cfg, res);
      bool any_failed = false;
      for (const auto& c : res.cells) {
        std::cout << "gamma=" << c.gamma << " C=" << c.c << " P_err=" << c.error.value << " +- "
                  << c.error.stderr_;
        if (c.geometry_replicas > 0) std::cout << " d_H=" << c.mean_hausdorff << " max_exc=" << c.mean_max_excursion;
        if (c.failed) std::cout << " FAILED: " << c.failure;
        std::cout << '\n';
        any_failed = any_failed || c.failed;
      }
      return any_failed ? 2 : 0;
    } else if (*validate) {
      const wonham::ExperimentConfig cfg = load(common);
      const wonham::ValidationReport report = wonham::run_validation(cfg.seed());
      report.print(std::cout);
      return report.passed() ? 0 : 2;
    } else if (*spikes) {
      const wonham::ExperimentConfig cfg = load(common);
      wonham::SpikesOptions opt;
      opt.epsilon = epsilon;
      opt.samples = samples;
      for (const auto& p : wonham::run_spikes(cfg, common.out_dir, opt)) std::cout << p << '\n';
    }
  } catch (const wonham::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const wonham::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
