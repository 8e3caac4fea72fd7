#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wonham/metrics.hpp"
#include "wonham/model.hpp"

namespace wonham {

inline const std::vector<double> kDefaultCValues{0.5, 1.0, 2.0, 4.0, 8.0};

struct ShowcaseOptions {
  double observation_gamma = 1e2;  ///< gamma of the x/y display
  std::vector<double> c_values = kDefaultCValues;
  std::size_t stride = 1;          ///< keep every stride-th grid row
};

/// One hidden path and one Brownian realization, rendered as
///   showcase_xy.csv        t, y_level, x_state           (observation_gamma)
///   showcase_filter.csv    t, pi, Y, x_state             (config gamma)
///   showcase_smoothed_C<c>.csv  t, pi, pi_smoothed, D    (config gamma, one per C)
/// Returns the written paths.
std::vector<std::string> run_showcase(const ExperimentConfig& config, const std::string& out_dir,
                                      const ShowcaseOptions& options = {});

struct SweepOptions {
  std::vector<double> gammas{1e4};
  std::vector<double> c_values = kDefaultCValues;
  std::uint64_t replicas = 200;           ///< replicas for the error probability
  std::uint64_t geometry_replicas = 0;    ///< replicas for the graph metrics; 0 disables them
  double t = 1.0;                         ///< horizon of the error probability
  std::optional<double> pi0;              ///< filter start for the error probability, default kKnownZeroStart
  unsigned threads = 1;
};

struct SweepCell {
  double gamma = 0.0;
  double c = 0.0;
  double delta = 0.0;
  Estimate error;
  double mean_hausdorff = 0.0;          ///< d_H(smoothed graph, x graph), averaged
  double mean_max_excursion = 0.0;      ///< max |pi^delta - x| in jump-free windows, averaged
  /// Fraction of geometry replicas whose max excursion exceeds 1/2.
  double excursion_over_half = 0.0;
  std::uint64_t geometry_replicas = 0;
  double wall_seconds = 0.0;            ///< wall time of the gamma block the cell belongs to
  bool failed = false;
  std::string failure;
};

struct SweepResult {
  std::vector<SweepCell> cells;  ///< gamma-major, C-minor
};

/// Error probability and smoothing geometry over the (gamma, C) grid.
///
/// Both parts start the filter at the known initial state (see known_start).
/// Replica r at gamma index g draws from substreams keyed (g, r), shared by
/// every C, so all C values see the same noise. Results do not depend on the
/// number of threads. A cell whose computation throws is marked failed.
SweepResult run_sweep(const ExperimentConfig& config, const SweepOptions& options);

/// sweep.csv: gamma, C, delta, error_probability, stderr, hits, replicas,
/// mean_hausdorff, mean_max_excursion, excursion_over_half, geometry_replicas, status
void write_sweep_csv(const std::string& path, const ExperimentConfig& config,
                     const SweepResult& result);

/// sweep_timing.csv: gamma, C, wall_seconds. Kept apart so sweep.csv stays reproducible.
void write_sweep_timing_csv(const std::string& path, const ExperimentConfig& config,
                            const SweepResult& result);

struct SpikesOptions {
  double epsilon = 0.5;
  std::uint64_t samples = 1;  ///< independent spike sets, replica r uses substream (0, r)
};

/// spikes.csv: sample, t, m, side (0 for spikes from x = 0, 1 otherwise)
/// spike_jumps.csv: sample, t, state (state after the jump; t = 0 row gives x_0)
std::vector<std::string> run_spikes(const ExperimentConfig& config, const std::string& out_dir,
                                    const SpikesOptions& options = {});

/// Per-replica geometry of one smoothed path against its hidden path.
struct SmoothingGeometry {
  double hausdorff;
  double max_excursion;
};

/// Filter start for a replica whose initial state x0 is known: the storage floor
/// of pi next to x0.
double known_start(int x0);

/// Graph resolution used for smoothed and hidden paths.
double geometry_resolution(double horizon);

/// Guard around jumps used when measuring excursions in jump-free windows: 4 log(gamma)/gamma.
double jump_guard(double gamma);

SmoothingGeometry smoothing_geometry(const SamplePath& smoothed, const JumpPath& x, double delta,
                                     double gamma);

}  // namespace wonham
