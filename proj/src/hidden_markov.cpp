#include "wonham/hidden_markov.hpp"

namespace wonham {

RatePair RatePair::from(const ModelParams& m) {
  if (!(m.lambda > 0.0) || !(m.p > 0.0) || !(m.p < 1.0))
    throw ConfigError("rates need lambda > 0 and p in (0,1)");
  return {m.rate01(), m.rate10()};
}

namespace {

std::vector<double> sample_jumps(const RatePair& rates, double from, int state, double horizon,
                                 RngStream& rng) {
  std::vector<double> jumps;
  double t = from;
  for (;;) {
    t += rng.exponential(state == 0 ? rates.rate01 : rates.rate10);
    if (!(t <= horizon)) break;
    jumps.push_back(t);
    state = 1 - state;
  }
  return jumps;
}

}  // namespace

JumpPath sample_jump_path(const ModelParams& model, double horizon, InitialLaw initial,
                          RngStream& rng) {
  const RatePair rates = RatePair::from(model);
  int x0 = 0;
  switch (initial) {
    case InitialLaw::zero: x0 = 0; break;
    case InitialLaw::one: x0 = 1; break;
    case InitialLaw::stationary: x0 = rng.uniform() < model.p ? 1 : 0; break;
  }
  return JumpPath(x0, sample_jumps(rates, 0.0, x0, horizon, rng), horizon);
}

JumpPath sample_jump_path(const ExperimentConfig& config, InitialLaw initial, RngStream& rng) {
  return sample_jump_path(config.model(), config.horizon(), initial, rng);
}

double stationary_law(const ModelParams& model) {
  const RatePair r = RatePair::from(model);
  return r.rate01 / r.total();
}

double stationary_law(const ExperimentConfig& config) { return stationary_law(config.model()); }

JumpPath constant_path(int state, double horizon) { return JumpPath(state, {}, horizon); }

JumpPath conditioned_no_jump_path(int initial, double t, const ModelParams& model,
                                  double horizon, RngStream& rng) {
  if (!(t >= 0.0) || t > horizon) throw DomainError("conditioning time outside [0, H]");
  const RatePair rates = RatePair::from(model);
  return JumpPath(initial, sample_jumps(rates, t, initial, horizon, rng), horizon);
}

}  // namespace wonham
