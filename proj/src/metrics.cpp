#include "wonham/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "wonham/filter.hpp"
#include "wonham/hidden_markov.hpp"
#include "wonham/observation.hpp"
#include "wonham/parallel.hpp"
#include "wonham/smoother.hpp"

namespace wonham {

double distance_L(const SamplePath& f, const SamplePath& g) {
  if (!(f.grid() == g.grid())) throw GridMismatch("distance_L: paths live on different grids");
  const Eigen::ArrayXd d = (f.values() - g.values()).array().abs().min(1.0);
  const Eigen::Index n = d.size();
  if (n < 2) return 0.0;
  return f.grid().dt() * (d.sum() - 0.5 * (d[0] + d[n - 1]));
}

namespace {

/// Points bucketed into vertical columns of fixed width, sorted by value
/// inside each column.
class ColumnIndex {
 public:
  ColumnIndex(const PlanarGraph& g, double width) : width_(width) {
    const auto& pts = g.points();
    const Eigen::Index n = pts.rows();
    t0_ = pts.col(0).minCoeff();
    const double span = pts.col(0).maxCoeff() - t0_;
    ncols_ = static_cast<std::size_t>(std::floor(span / width_)) + 1;

    std::vector<std::size_t> col(static_cast<std::size_t>(n));
    start_.assign(ncols_ + 1, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      col[static_cast<std::size_t>(i)] = column_of(pts(i, 0));
      ++start_[col[static_cast<std::size_t>(i)] + 1];
    }
    std::partial_sum(start_.begin(), start_.end(), start_.begin());

    std::vector<std::size_t> order(static_cast<std::size_t>(n));
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (Eigen::Index i = 0; i < n; ++i)
      order[fill[col[static_cast<std::size_t>(i)]]++] = static_cast<std::size_t>(i);
    ts_.resize(order.size());
    vs_.resize(order.size());
    for (std::size_t c = 0; c < ncols_; ++c) {
      auto first = order.begin() + static_cast<std::ptrdiff_t>(start_[c]);
      auto last = order.begin() + static_cast<std::ptrdiff_t>(start_[c + 1]);
      std::sort(first, last, [&](std::size_t a, std::size_t b) {
        return pts(static_cast<Eigen::Index>(a), 1) < pts(static_cast<Eigen::Index>(b), 1);
      });
    }
    for (std::size_t k = 0; k < order.size(); ++k) {
      ts_[k] = pts(static_cast<Eigen::Index>(order[k]), 0);
      vs_[k] = pts(static_cast<Eigen::Index>(order[k]), 1);
    }
  }

  /// Distance from (t, v) to the nearest indexed point. Returns as soon as a
  /// point within `stop` is found, in which case the value is only an upper bound.
  double nearest(double t, double v, double stop) const {
    const std::size_t c = column_of(t);
    double best2 = std::numeric_limits<double>::infinity();
    const double stop2 = stop * stop;
    scan(c, t, v, best2);
    if (best2 <= stop2) return std::sqrt(best2);
    const double slack = 1e-12 * width_;
    for (std::size_t k = 1;; ++k) {
      bool any = false;
      if (k <= c) {
        const double gap = std::max(0.0, t - (t0_ + static_cast<double>(c - k + 1) * width_) - slack);
        if (gap * gap < best2) {
          any = true;
          scan(c - k, t, v, best2);
        }
      }
      if (c + k < ncols_) {
        const double gap = std::max(0.0, t0_ + static_cast<double>(c + k) * width_ - t - slack);
        if (gap * gap < best2) {
          any = true;
          scan(c + k, t, v, best2);
        }
      }
      if (best2 <= stop2 || !any) break;
    }
    return std::sqrt(best2);
  }

 private:
  std::size_t column_of(double t) const {
    const double c = std::floor((t - t0_) / width_);
    if (!(c > 0.0)) return 0;
    return std::min(static_cast<std::size_t>(c), ncols_ - 1);
  }

  void scan(std::size_t c, double t, double v, double& best2) const {
    const std::size_t lo = start_[c];
    const std::size_t hi = start_[c + 1];
    if (lo == hi) return;
    const auto first = vs_.begin() + static_cast<std::ptrdiff_t>(lo);
    const auto last = vs_.begin() + static_cast<std::ptrdiff_t>(hi);
    const std::size_t mid = lo + static_cast<std::size_t>(std::lower_bound(first, last, v) - first);
    for (std::size_t j = mid; j < hi; ++j) {
      const double dv = vs_[j] - v;
      if (dv * dv >= best2) break;
      const double dt = ts_[j] - t;
      best2 = std::min(best2, dt * dt + dv * dv);
    }
    for (std::size_t j = mid; j-- > lo;) {
      const double dv = v - vs_[j];
      if (dv * dv >= best2) break;
      const double dt = ts_[j] - t;
      best2 = std::min(best2, dt * dt + dv * dv);
    }
  }

  double t0_ = 0.0;
  double width_;
  std::size_t ncols_ = 1;
  std::vector<std::size_t> start_;
  std::vector<double> ts_;
  std::vector<double> vs_;
};

}  // namespace

double directed_hausdorff(const PlanarGraph& from, const PlanarGraph& to) {
  if (from.size() == 0 || to.size() == 0) throw DomainError("distance_H: empty graph");
  const double width = std::max({to.res(), from.res(), to.horizon() * 1e-6, 1e-12});
  const ColumnIndex index(to, width);

  // Visiting points in a fixed pseudo-random order raises the running bound
  // early, which makes the early exit effective on long monotone stretches.
  std::vector<Eigen::Index> order(from.size());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::mt19937_64 shuffle_rng(0x9e3779b97f4a7c15ULL);
  std::shuffle(order.begin(), order.end(), shuffle_rng);

  const auto& pts = from.points();
  double worst = 0.0;
  for (Eigen::Index i : order) worst = std::max(worst, index.nearest(pts(i, 0), pts(i, 1), worst));
  return worst;
}

double distance_H(const PlanarGraph& a, const PlanarGraph& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

ExcursionSet extract_excursions(const SamplePath& pi, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 0.5)) throw DomainError("extract_excursions: epsilon outside (0, 1/2)");
  ExcursionSet out{{}, epsilon};
  const TimeGrid& grid = pi.grid();
  const double lo_exit = 0.5 * epsilon;
  const double hi_exit = 1.0 - 0.5 * epsilon;
  const double lo_entry = epsilon;
  const double hi_entry = 1.0 - epsilon;

  bool inside = false;  // waiting for S while inside, for T otherwise
  bool armed = false;   // an exit has been seen, so the next entry counts
  double entry = 0.0;
  for (std::size_t k = 0; k < pi.size(); ++k) {
    const double v = pi[k];
    if (inside) {
      if (v <= lo_exit || v >= hi_exit) {
        out.intervals.push_back({entry, grid.time(k)});
        inside = false;
      }
    } else if (!armed) {
      armed = v <= lo_exit || v >= hi_exit;
    } else if (v >= lo_entry && v <= hi_entry) {
      inside = true;
      entry = grid.time(k);
    }
  }
  return out;
}

std::optional<double> hitting_time(const SamplePath& z) {
  for (std::size_t k = 0; k < z.size(); ++k)
    if (z[k] > 0.5) return z.grid().time(k);
  return std::nullopt;
}

SamplePath estimator_path(const SamplePath& pi) {
  return SamplePath(pi.grid(), (pi.values().array() > 0.5).cast<double>().matrix());
}

namespace {

/// Index ranges [first, last] of grid points whose window [t - before, t + after]
/// contains no jump of x.
template <typename F>
void for_each_quiet_point(const TimeGrid& grid, const JumpPath& x, double before, double after, F&& fn) {
  const auto& jumps = x.jump_times();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid.time(k);
    const double lo = t - before;
    const double hi = t + after;
    if (lo < grid.t0() || hi > grid.end()) continue;
    const auto it = std::upper_bound(jumps.begin(), jumps.end(), lo);
    if (it != jumps.end() && *it <= hi) continue;
    fn(k, t);
  }
}

}  // namespace

double max_no_jump_deviation(const SamplePath& z, const JumpPath& x, double lag, double guard) {
  double worst = 0.0;
  for_each_quiet_point(z.grid(), x, lag + guard, guard, [&](std::size_t k, double t) {
    worst = std::max(worst, std::abs(z[k] - static_cast<double>(state_at(x, t))));
  });
  return worst;
}

std::vector<double> excursion_heights(const SamplePath& pi, const ExcursionSet& excursions,
                                      const JumpPath& x, double guard) {
  const TimeGrid& grid = pi.grid();
  const auto& jumps = x.jump_times();
  std::vector<double> out;
  for (const Excursion& e : excursions.intervals) {
    const auto it = std::upper_bound(jumps.begin(), jumps.end(), e.T - guard);
    if (it != jumps.end() && *it <= e.S + guard) continue;
    const std::size_t k0 = grid.index_of(e.T);
    const std::size_t k1 = grid.index_of(e.S);
    const auto seg = pi.values().segment(static_cast<Eigen::Index>(k0), static_cast<Eigen::Index>(k1 - k0 + 1));
    out.push_back(state_at(x, e.T) == 0 ? seg.maxCoeff() : 1.0 - seg.minCoeff());
  }
  return out;
}

Estimate Estimate::binomial(std::uint64_t hits, std::uint64_t n) {
  if (n == 0) throw DomainError("estimate over zero samples");
  Estimate e;
  e.hits = hits;
  e.samples = n;
  e.value = static_cast<double>(hits) / static_cast<double>(n);
  e.stderr_ = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n));
  return e;
}

Estimate error_probability(const ExperimentConfig& config, double t, std::uint64_t n_replicas,
                           const ErrorProbabilityOptions& options) {
  if (n_replicas == 0) throw ConfigError("error_probability: zero replicas");
  if (!(t > 0.0) || t > config.horizon()) throw ConfigError("error_probability: t outside (0, H]");
  const ModelParams model = config.model();
  const TimeGrid grid = build_grid(0.0, t, config.dt());
  const JumpPath x = conditioned_no_jump_path(0, t);
  const double scale = options.noise_scale.value_or(1.0 / std::sqrt(model.gamma));
  const double pi0 = options.pi0.value_or(kKnownZeroStart);
  const double delta = config.delta();

  std::vector<unsigned char> hit(n_replicas, 0);
  parallel_for(n_replicas, options.threads, [&](std::size_t r) {
    RngStream rng = substream(config.seed(), options.cell, r, Stream::brownian);
    const Eigen::VectorXd dB = brownian_increments(grid, rng);
    const ObservationIncrements obs = observation_from_noise(x, grid, dB, scale);
    const FilterPath filter = integrate_filter_logistic(obs, model, pi0);
    const SmoothedPath smoothed = smooth_path(filter.pi(), delta, model);
    hit[r] = hitting_time(smoothed.pi_smoothed).has_value() ? 1 : 0;
  });
  const std::uint64_t hits = std::accumulate(hit.begin(), hit.end(), std::uint64_t{0});
  return Estimate::binomial(hits, n_replicas);
}

}  // namespace wonham
