#pragma once

#include "wonham/model.hpp"
#include "wonham/rng.hpp"

namespace wonham {

/// Jump rates of the hidden chain: 0 -> 1 at lambda p, 1 -> 0 at lambda (1 - p).
struct RatePair {
  double rate01;
  double rate10;

  static RatePair from(const ModelParams& m);
  double total() const { return rate01 + rate10; }
};

/// Law of x_0.
enum class InitialLaw { zero, one, stationary };

/// Exact CTMC sample on [0, horizon]: exponential holding times by inverse CDF.
JumpPath sample_jump_path(const ModelParams& model, double horizon, InitialLaw initial,
                          RngStream& rng);
JumpPath sample_jump_path(const ExperimentConfig& config, InitialLaw initial, RngStream& rng);

/// P(x = 1) under the invariant measure, i.e. p.
double stationary_law(const ModelParams& model);
double stationary_law(const ExperimentConfig& config);

/// Path without any jump on [0, horizon].
JumpPath constant_path(int state, double horizon);

/// Path held at `initial` on [0, t] and continued as an unconditioned chain up to `horizon`.
JumpPath conditioned_no_jump_path(int initial, double t, const ModelParams& model,
                                  double horizon, RngStream& rng);

/// Restriction of the above to [0, t]: the constant path.
inline JumpPath conditioned_no_jump_path(int initial, double t) { return constant_path(initial, t); }

}  // namespace wonham
