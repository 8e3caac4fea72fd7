#include "wonham/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <numeric>

#include "wonham/csv.hpp"
#include "wonham/filter.hpp"
#include "wonham/hidden_markov.hpp"
#include "wonham/observation.hpp"
#include "wonham/parallel.hpp"
#include "wonham/smoother.hpp"
#include "wonham/spike_model.hpp"

namespace wonham {

namespace {

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

std::string c_label(double c) {
  std::string s = format_number(c);
  for (char& ch : s)
    if (ch == '.') ch = 'p';
  return s;
}

}  // namespace

double known_start(int x0) { return x0 == 0 ? kKnownZeroStart : 1.0 - kKnownZeroStart; }

double geometry_resolution(double horizon) { return std::max(1e-3, horizon * 1e-4); }

double jump_guard(double gamma) { return gamma > 1.0 ? 4.0 * std::log(gamma) / gamma : 0.0; }

SmoothingGeometry smoothing_geometry(const SamplePath& smoothed, const JumpPath& x, double delta,
                                     double gamma) {
  const double res = geometry_resolution(smoothed.grid().end());
  const PlanarGraph g_smooth = graph_of_continuous(smoothed, res);
  const PlanarGraph g_x = graph_of_cadlag(x, smoothed.grid(), res);
  return {distance_H(g_smooth, g_x), max_no_jump_deviation(smoothed, x, delta, jump_guard(gamma))};
}

// ---------------------------------------------------------------------------
// showcase

std::vector<std::string> run_showcase(const ExperimentConfig& config, const std::string& out_dir,
                                      const ShowcaseOptions& options) {
  if (options.stride == 0) throw ConfigError("stride must be >= 1");
  ensure_dir(out_dir);
  const std::size_t stride = options.stride;
  const ModelParams model = config.model();
  const TimeGrid grid = build_grid(0.0, config.horizon(), config.dt());

  RngStream chain_rng = substream(config.seed(), 0, 0, Stream::chain);
  RngStream noise_rng = substream(config.seed(), 0, 0, Stream::brownian);
  const JumpPath x = sample_jump_path(model, config.horizon(), InitialLaw::stationary, chain_rng);
  const Eigen::VectorXd dB = brownian_increments(grid, noise_rng);
  const SamplePath x_grid = sample_on_grid(x, grid);

  std::vector<std::string> written;

  {
    const ExperimentConfig c1 = config.with_gamma(options.observation_gamma);
    const auto obs = observation_from_noise(x, grid, dB, 1.0 / std::sqrt(options.observation_gamma));
    const SamplePath y = observation_levels(obs);
    const std::string path = join(out_dir, "showcase_xy.csv");
    CsvWriter w(path, c1, {"t", "y_level", "x_state"});
    for (std::size_t k = 0; k < grid.size(); k += stride) w.row({grid.time(k), y[k], x_grid[k]});
    w.close();
    written.push_back(path);
  }

  const auto obs = observation_from_noise(x, grid, dB, 1.0 / std::sqrt(model.gamma));
  const FilterPath filter = integrate_filter_logistic(obs, model, model.p);
  {
    const std::string path = join(out_dir, "showcase_filter.csv");
    CsvWriter w(path, config, {"t", "pi", "Y", "x_state"});
    for (std::size_t k = 0; k < grid.size(); k += stride)
      w.row({grid.time(k), filter.pi()[k], filter.y_logit()[k], x_grid[k]});
    w.close();
    written.push_back(path);
  }

  for (double c : options.c_values) {
    const ExperimentConfig cc = config.with_smoothing(Smoothing::coefficient(c));
    const SmoothedPath sm = smooth_path(filter.pi(), cc.delta(), model);
    const DampingPath damp = damping_window(filter.pi(), cc.delta(), model);
    const std::string path = join(out_dir, "showcase_smoothed_C" + c_label(c) + ".csv");
    CsvWriter w(path, cc, {"t", "pi", "pi_smoothed", "D"});
    for (std::size_t k = 0; k < grid.size(); k += stride)
      w.row({grid.time(k), filter.pi()[k], sm.pi_smoothed[k], damp.D[k]});
    w.close();
    written.push_back(path);
  }
  return written;
}

// ---------------------------------------------------------------------------
// sweep

namespace {

struct ReplicaOutcome {
  bool ok = true;
  std::string failure;
  bool hit = false;
  double hausdorff = 0.0;
  double max_excursion = 0.0;
};

}  // namespace

SweepResult run_sweep(const ExperimentConfig& config, const SweepOptions& options) {
  if (options.gammas.empty() || options.c_values.empty())
    throw ConfigError("sweep needs at least one gamma and one C");
  if (options.replicas == 0) throw ConfigError("sweep needs at least one replica");
  if (!(options.t > 0.0) || options.t > config.horizon())
    throw ConfigError("sweep time t must lie in (0, H]");

  const std::size_t nc = options.c_values.size();
  SweepResult result;

  for (std::size_t g = 0; g < options.gammas.size(); ++g) {
    const auto started = std::chrono::steady_clock::now();
    const double gamma = options.gammas[g];

    std::vector<ExperimentConfig> cell_cfg;
    std::vector<SweepCell> cells(nc);
    for (std::size_t i = 0; i < nc; ++i) {
      cells[i].gamma = gamma;
      cells[i].c = options.c_values[i];
      try {
        cell_cfg.push_back(config.with_gamma(gamma).with_smoothing(Smoothing::coefficient(options.c_values[i])));
        cells[i].delta = cell_cfg.back().delta();
      } catch (const std::exception& e) {
        throw ConfigError("sweep cell gamma=" + format_number(gamma) + " C=" +
                          format_number(options.c_values[i]) + ": " + e.what());
      }
    }
    const ModelParams model = cell_cfg.front().model();

    // error probability: x = 0 on [0, t]
    std::vector<ReplicaOutcome> err(options.replicas * nc);
    {
      const TimeGrid grid = build_grid(0.0, options.t, config.dt());
      const JumpPath x = conditioned_no_jump_path(0, options.t);
      const double pi0 = options.pi0.value_or(kKnownZeroStart);
      parallel_for(options.replicas, options.threads, [&](std::size_t r) {
        RngStream rng = substream(config.seed(), g, r, Stream::brownian);
        const Eigen::VectorXd dB = brownian_increments(grid, rng);
        const auto obs = observation_from_noise(x, grid, dB, 1.0 / std::sqrt(gamma));
        std::optional<FilterPath> filter;
        std::string filter_failure;
        try {
          filter.emplace(integrate_filter_logistic(obs, model, pi0));
        } catch (const std::exception& e) {
          filter_failure = e.what();
        }
        for (std::size_t i = 0; i < nc; ++i) {
          ReplicaOutcome& out = err[r * nc + i];
          if (!filter) {
            out.ok = false;
            out.failure = filter_failure;
            continue;
          }
          try {
            const SmoothedPath sm = smooth_path(filter->pi(), cells[i].delta, model);
            out.hit = hitting_time(sm.pi_smoothed).has_value();
          } catch (const std::exception& e) {
            out.ok = false;
            out.failure = e.what();
          }
        }
      });
    }

    // geometry: unconditioned path on [0, H]
    std::vector<ReplicaOutcome> geo(options.geometry_replicas * nc);
    if (options.geometry_replicas > 0) {
      const TimeGrid grid = build_grid(0.0, config.horizon(), config.dt());
      parallel_for(options.geometry_replicas, options.threads, [&](std::size_t r) {
        RngStream chain_rng = substream(config.seed(), g, r, Stream::chain);
        RngStream noise_rng = substream(config.seed(), g, r, Stream::auxiliary);
        const JumpPath x = sample_jump_path(model, config.horizon(), InitialLaw::stationary, chain_rng);
        const Eigen::VectorXd dB = brownian_increments(grid, noise_rng);
        const auto obs = observation_from_noise(x, grid, dB, 1.0 / std::sqrt(gamma));
        std::optional<FilterPath> filter;
        std::string filter_failure;
        try {
          filter.emplace(integrate_filter_logistic(obs, model, known_start(x.initial_state())));
        } catch (const std::exception& e) {
          filter_failure = e.what();
        }
        for (std::size_t i = 0; i < nc; ++i) {
          ReplicaOutcome& out = geo[r * nc + i];
          if (!filter) {
            out.ok = false;
            out.failure = filter_failure;
            continue;
          }
          try {
            const SmoothedPath sm = smooth_path(filter->pi(), cells[i].delta, model);
            const SmoothingGeometry sg = smoothing_geometry(sm.pi_smoothed, x, sm.delta_used, gamma);
            out.hausdorff = sg.hausdorff;
            out.max_excursion = sg.max_excursion;
          } catch (const std::exception& e) {
            out.ok = false;
            out.failure = e.what();
          }
        }
      });
    }

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    for (std::size_t i = 0; i < nc; ++i) {
      SweepCell& cell = cells[i];
      std::uint64_t hits = 0;
      for (std::size_t r = 0; r < options.replicas && !cell.failed; ++r) {
        const ReplicaOutcome& o = err[r * nc + i];
        if (!o.ok) {
          cell.failed = true;
          cell.failure = o.failure;
        }
        hits += o.hit ? 1 : 0;
      }
      if (!cell.failed) cell.error = Estimate::binomial(hits, options.replicas);

      double sum_h = 0.0, sum_m = 0.0;
      std::uint64_t over = 0;
      for (std::size_t r = 0; r < options.geometry_replicas && !cell.failed; ++r) {
        const ReplicaOutcome& o = geo[r * nc + i];
        if (!o.ok) {
          cell.failed = true;
          cell.failure = o.failure;
        }
        sum_h += o.hausdorff;
        sum_m += o.max_excursion;
        over += o.max_excursion > 0.5 ? 1 : 0;
      }
      cell.geometry_replicas = options.geometry_replicas;
      if (options.geometry_replicas > 0 && !cell.failed) {
        const double n = static_cast<double>(options.geometry_replicas);
        cell.mean_hausdorff = sum_h / n;
        cell.mean_max_excursion = sum_m / n;
        cell.excursion_over_half = static_cast<double>(over) / n;
      }
      cell.wall_seconds = seconds;
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

void write_sweep_csv(const std::string& path, const ExperimentConfig& config,
                     const SweepResult& result) {
  CsvWriter w(path, config,
              {"gamma", "C", "delta", "error_probability", "stderr", "hits", "replicas",
               "mean_hausdorff", "mean_max_excursion", "excursion_over_half", "geometry_replicas",
               "status"});
  for (const SweepCell& c : result.cells) {
    std::string status = "ok";
    if (c.failed) {
      status = "failed:" + c.failure;
      for (char& ch : status)
        if (ch == ',' || ch == '\n') ch = ';';
    }
    const bool geo = c.geometry_replicas > 0 && !c.failed;
    const auto opt = [&](double v) { return geo ? format_number(v) : std::string("nan"); };
    w.row_cells({format_number(c.gamma), format_number(c.c), format_number(c.delta),
                 c.failed ? "nan" : format_number(c.error.value),
                 c.failed ? "nan" : format_number(c.error.stderr_), std::to_string(c.error.hits),
                 std::to_string(c.error.samples), opt(c.mean_hausdorff), opt(c.mean_max_excursion),
                 opt(c.excursion_over_half), std::to_string(c.geometry_replicas), status});
  }
  w.close();
}

void write_sweep_timing_csv(const std::string& path, const ExperimentConfig& config,
                            const SweepResult& result) {
  CsvWriter w(path, config, {"gamma", "C", "wall_seconds"});
  for (const SweepCell& c : result.cells) w.row({c.gamma, c.c, c.wall_seconds});
  w.close();
}

// ---------------------------------------------------------------------------
// spikes

std::vector<std::string> run_spikes(const ExperimentConfig& config, const std::string& out_dir,
                                    const SpikesOptions& options) {
  ensure_dir(out_dir);
  const ModelParams model = config.model();
  const std::string spikes_path = join(out_dir, "spikes.csv");
  const std::string jumps_path = join(out_dir, "spike_jumps.csv");
  CsvWriter ws(spikes_path, config, {"sample", "t", "m", "side"});
  CsvWriter wj(jumps_path, config, {"sample", "t", "state"});
  for (std::uint64_t r = 0; r < options.samples; ++r) {
    RngStream chain_rng = substream(config.seed(), 0, r, Stream::chain);
    RngStream spike_rng = substream(config.seed(), 0, r, Stream::spikes);
    const JumpPath x = sample_jump_path(model, config.horizon(), InitialLaw::stationary, chain_rng);
    const SpikeSet set = sample_spike_process(x, options.epsilon, model, spike_rng);
    const auto sample = static_cast<double>(r);
    wj.row({sample, 0.0, static_cast<double>(x.initial_state())});
    int state = x.initial_state();
    for (double t : x.jump_times()) {
      state = 1 - state;
      wj.row({sample, t, static_cast<double>(state)});
    }
    for (const Spike& s : set.spikes())
      ws.row({sample, s.t, s.m, s.side == SpikeSide::from0 ? 0.0 : 1.0});
  }
  ws.close();
  wj.close();
  return {spikes_path, jumps_path};
}

}  // namespace wonham
