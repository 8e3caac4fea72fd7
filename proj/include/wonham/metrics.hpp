#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wonham/model.hpp"

namespace wonham {

/// int_0^H min(|f - g|, 1) dt by trapezoid.
double distance_L(const SamplePath& f, const SamplePath& g);

/// sup_{a in A} d(a, B) for the sampled point sets.
double directed_hausdorff(const PlanarGraph& from, const PlanarGraph& to);

/// Hausdorff distance of the sampled point sets. Exact for the samples; as a
/// distance between the underlying closed sets it is accurate to
/// max(res) of the two graphs.
double distance_H(const PlanarGraph& a, const PlanarGraph& b);

struct Excursion {
  double T;  ///< entry into [eps, 1 - eps]
  double S;  ///< next exit to pi <= eps/2 or pi >= 1 - eps/2
};

struct ExcursionSet {
  std::vector<Excursion> intervals;
  double epsilon;
};

/// Alternating scan for the stopping times S_{j-1} and T_j. The scan starts
/// waiting for the first exit to the eps/2-band, so a path starting inside
/// (eps, 1 - eps) contributes no excursion until it has left. Only intervals
/// [T_j, S_j] completed inside the grid are returned.
ExcursionSet extract_excursions(const SamplePath& pi, double epsilon);

/// First grid time with z > 1/2.
std::optional<double> hitting_time(const SamplePath& z);

/// 1{pi > 1/2} pointwise.
SamplePath estimator_path(const SamplePath& pi);

/// Largest |z_t - x_t| over grid times t whose lag window [t - lag - guard, t + guard]
/// contains no jump of x.
double max_no_jump_deviation(const SamplePath& z, const JumpPath& x, double lag, double guard);

/// Heights of excursions lying inside jump-free windows (padded by `guard`):
/// max pi over [T, S] when x = 0, 1 - min pi when x = 1.
std::vector<double> excursion_heights(const SamplePath& pi, const ExcursionSet& excursions,
                                      const JumpPath& x, double guard);

/// Monte Carlo estimate with binomial standard error.
struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;

  static Estimate binomial(std::uint64_t hits, std::uint64_t n);
};

class ExperimentConfig;

/// Filter start encoding x_0 = 0 as known: the conditional law P(x_0 = 1 | x_0 = 0) = 0,
/// lifted to the storage floor of pi.
inline constexpr double kKnownZeroStart = 1e-12;

struct ErrorProbabilityOptions {
  unsigned threads = 1;
  std::uint64_t cell = 0;                  ///< substream cell key
  std::optional<double> noise_scale;       ///< overrides gamma^{-1/2}
  std::optional<double> pi0;               ///< filter start, default kKnownZeroStart
};

/// P(T(xhat^{delta}) <= t | T(x) > t): fraction of replicas, with x = 0 on [0, t]
/// and fresh noise, whose smoothed estimator exceeds 1/2 on [0, t].
Estimate error_probability(const ExperimentConfig& config, double t, std::uint64_t n_replicas,
                           const ErrorProbabilityOptions& options = {});

}  // namespace wonham
