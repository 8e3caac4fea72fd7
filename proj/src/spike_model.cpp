#include "wonham/spike_model.hpp"

#include <algorithm>

namespace wonham {

SpikeSet::SpikeSet(JumpPath base, std::vector<Spike> spikes, double epsilon_min)
    : base_(std::move(base)), spikes_(std::move(spikes)), epsilon_min_(epsilon_min) {
  if (!(epsilon_min_ > 0.0) || !(epsilon_min_ < 1.0))
    throw DomainError("epsilon_min must lie in (0,1)");
  const auto& jumps = base_.jump_times();
  for (const Spike& s : spikes_) {
    if (!(s.m > epsilon_min_) || s.m > 1.0) throw DomainError("spike length outside (eps, 1]");
    if (!(s.t > 0.0) || !(s.t < base_.horizon())) throw DomainError("spike time outside (0, H)");
    if (std::binary_search(jumps.begin(), jumps.end(), s.t))
      throw DomainError("spike placed on a jump time");
    const int state = state_at(base_, s.t);
    if ((state == 0) != (s.side == SpikeSide::from0))
      throw DomainError("spike side does not match the base state");
  }
}

SpikeSet sample_spike_process(const JumpPath& base, double epsilon_min, const ModelParams& model,
                              RngStream& rng) {
  if (!(epsilon_min > 0.0) || !(epsilon_min < 1.0))
    throw DomainError("epsilon_min must lie in (0,1)");
  const double mass = 1.0 / epsilon_min - 1.0;  // int_eps^1 dm / m^2
  std::vector<Spike> out;
  for (const auto& piece : base.pieces()) {
    const double len = piece.end - piece.begin;
    if (!(len > 0.0)) continue;
    const double weight = piece.state == 0 ? model.p : 1.0 - model.p;
    const std::uint64_t count = rng.poisson(weight * model.lambda * len * mass);
    for (std::uint64_t i = 0; i < count; ++i) {
      double t = piece.begin + len * rng.uniform();
      if (!(t > piece.begin)) t = std::nextafter(piece.begin, piece.end);
      // inverse CDF of F(m) = (1/eps - 1/m) / (1/eps - 1)
      const double m = 1.0 / (1.0 / epsilon_min - rng.uniform() * mass);
      out.push_back({t, std::clamp(m, std::nextafter(epsilon_min, 1.0), 1.0),
                     piece.state == 0 ? SpikeSide::from0 : SpikeSide::from1});
    }
  }
  std::sort(out.begin(), out.end(), [](const Spike& a, const Spike& b) { return a.t < b.t; });
  return SpikeSet(base, std::move(out), epsilon_min);
}

double max_spike(const SpikeSet& spikes) {
  double best = 0.0;
  for (const Spike& s : spikes.spikes()) best = std::max(best, s.m);
  return best;
}

double max_spike_cdf(const JumpPath& base, double eta, const ModelParams& model) {
  if (!(eta > 0.0) || !(eta < 1.0)) throw DomainError("eta must lie in (0,1)");
  double weighted = 0.0;
  for (const auto& piece : base.pieces())
    weighted += (piece.end - piece.begin) * (piece.state == 0 ? model.p : 1.0 - model.p);
  return std::exp(-model.lambda * eta / (1.0 - eta) * weighted);
}

EstimatorSlices::EstimatorSlices(JumpPath base, std::vector<double> both_times)
    : base_(std::move(base)), both_(std::move(both_times)) {
  std::sort(both_.begin(), both_.end());
}

EstimatorSlices::Slice EstimatorSlices::at(double t) const {
  if (std::binary_search(both_.begin(), both_.end(), t)) return Slice::both;
  return state_at(base_, t) == 0 ? Slice::zero : Slice::one;
}

EstimatorSlices limit_estimator_slices(const SpikeSet& spikes) {
  std::vector<double> both = spikes.base().jump_times();
  for (const Spike& s : spikes.spikes())
    if (s.m > 0.5) both.push_back(s.t);
  return EstimatorSlices(spikes.base(), std::move(both));
}

PlanarGraph spike_graph(const SpikeSet& spikes, const TimeGrid& grid, double res) {
  const PlanarGraph base = graph_of_cadlag(spikes.base(), grid, res);
  GraphBuilder b(res, base.horizon());
  const auto& pts = base.points();
  for (Eigen::Index i = 0; i < pts.rows(); ++i) b.add_point(pts(i, 0), pts(i, 1));
  for (const Spike& s : spikes.spikes()) {
    if (s.t < grid.t0() || s.t > grid.end()) continue;
    if (s.side == SpikeSide::from0) {
      b.add_bar(s.t, 0.0, s.m);
    } else {
      b.add_bar(s.t, 1.0 - s.m, 1.0);
    }
  }
  return std::move(b).build();
}

}  // namespace wonham
