#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wonham/errors.hpp"

namespace wonham {

// ---------------------------------------------------------------------------
// Parameters

/// Rates and noise scale of the two-state model.
///
/// Unlike ExperimentConfig this carries no positivity guard on gamma, so the
/// noiseless limit gamma = 0 can be integrated directly.
struct ModelParams {
  double lambda = 1.3;  ///< total jump rate
  double p = 0.4;       ///< stationary probability of state 1
  double gamma = 1e4;   ///< inverse noise variance of the observation

  double rate01() const { return lambda * p; }
  double rate10() const { return lambda * (1.0 - p); }
};

/// Smoothing lag, given either directly or as delta = C log(gamma) / gamma.
struct Smoothing {
  enum class Kind { delta, coefficient };
  Kind kind = Kind::coefficient;
  double value = 2.0;

  static Smoothing lag(double delta) { return {Kind::delta, delta}; }
  static Smoothing coefficient(double c) { return {Kind::coefficient, c}; }

  /// Resolved lag for a given gamma.
  double delta(double gamma) const {
    return kind == Kind::delta ? value : value * std::log(gamma) / gamma;
  }
};

struct ConfigFields {
  double lambda = 1.3;
  double p = 0.4;
  double gamma = 1e4;
  double horizon = 10.0;
  double dt = 1e-5;
  Smoothing smoothing = Smoothing::coefficient(2.0);
  std::uint64_t seed = 1;
  std::uint64_t replicas = 200;
};

/// Single source of truth for a run. Validated at construction.
class ExperimentConfig {
 public:
  static constexpr double kMaxGammaDt = 0.5;
  static constexpr double kWarnGammaDt = 0.1;

  ExperimentConfig() : ExperimentConfig(ConfigFields{}) {}
  explicit ExperimentConfig(const ConfigFields& fields);

  /// Parse a JSON document. Unknown fields are rejected.
  static ExperimentConfig from_json(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);
  std::string to_json() const;

  const ConfigFields& fields() const { return f_; }
  double lambda() const { return f_.lambda; }
  double p() const { return f_.p; }
  double gamma() const { return f_.gamma; }
  double horizon() const { return f_.horizon; }
  double dt() const { return f_.dt; }
  double delta() const { return f_.smoothing.delta(f_.gamma); }
  const Smoothing& smoothing() const { return f_.smoothing; }
  std::uint64_t seed() const { return f_.seed; }
  std::uint64_t replicas() const { return f_.replicas; }
  ModelParams model() const { return {f_.lambda, f_.p, f_.gamma}; }

  /// Non-fatal remarks, e.g. gamma*dt above the recommended 0.1.
  std::vector<std::string> warnings() const;

  ExperimentConfig with_gamma(double gamma) const;
  ExperimentConfig with_smoothing(Smoothing s) const;
  ExperimentConfig with_horizon(double horizon) const;
  ExperimentConfig with_seed(std::uint64_t seed) const;
  ExperimentConfig with_replicas(std::uint64_t replicas) const;

 private:
  ConfigFields f_;
};

// ---------------------------------------------------------------------------
// Time grid

/// Uniform grid t0 + k dt, k = 0..n.
class TimeGrid {
 public:
  TimeGrid(double t0, double dt, std::size_t n, double requested_end);

  double t0() const { return t0_; }
  double dt() const { return dt_; }
  std::size_t steps() const { return n_; }
  std::size_t size() const { return n_ + 1; }
  double time(std::size_t k) const { return t0_ + static_cast<double>(k) * dt_; }
  double end() const { return time(n_); }
  double requested_end() const { return requested_end_; }
  /// True when the last grid point falls short of the requested horizon.
  bool short_of_horizon() const;

  /// Nearest grid index, ties rounded up, clamped to [0, n].
  std::size_t index_of(double t) const;

  /// Grid indices spanned by a lag, rounded to the nearest multiple of dt.
  std::size_t lag_steps(double delta) const;

  friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
    return a.t0_ == b.t0_ && a.dt_ == b.dt_ && a.n_ == b.n_;
  }

 private:
  double t0_;
  double dt_;
  std::size_t n_;
  double requested_end_;
};

/// n = round((horizon - t0) / dt).
TimeGrid build_grid(double t0, double horizon, double dt);

// ---------------------------------------------------------------------------
// Paths

/// Exact trajectory of the hidden chain: initial state and sorted jump times in (0, H].
class JumpPath {
 public:
  struct Piece {
    double begin;
    double end;
    int state;
  };

  JumpPath(int initial_state, std::vector<double> jump_times, double horizon);

  int initial_state() const { return initial_; }
  const std::vector<double>& jump_times() const { return jumps_; }
  double horizon() const { return horizon_; }
  std::size_t jump_count() const { return jumps_.size(); }

  /// Constancy intervals [begin, end) covering [0, H].
  std::vector<Piece> pieces() const;

  /// Restriction to [0, t] (t <= H).
  JumpPath truncated(double t) const;

 private:
  int initial_;
  std::vector<double> jumps_;
  double horizon_;
};

/// Cadlag evaluation; at a jump time the post-jump state is returned.
int state_at(const JumpPath& path, double t);

/// Values of a scalar process on a uniform grid.
template <typename Scalar>
class BasicSamplePath {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicSamplePath(TimeGrid grid, Vector values) : grid_(grid), values_(std::move(values)) {
    if (static_cast<std::size_t>(values_.size()) != grid_.size())
      throw GridMismatch("sample path length does not match its grid");
    if (!values_.allFinite()) throw DomainError("sample path contains non-finite values");
  }

  const TimeGrid& grid() const { return grid_; }
  const Vector& values() const { return values_; }
  Scalar operator[](std::size_t k) const { return values_[static_cast<Eigen::Index>(k)]; }
  std::size_t size() const { return grid_.size(); }

 private:
  TimeGrid grid_;
  Vector values_;
};

using SamplePath = BasicSamplePath<double>;

/// Grid values of a jump path (state at each grid point).
SamplePath sample_on_grid(const JumpPath& path, const TimeGrid& grid);

// ---------------------------------------------------------------------------
// Graphs

/// Finite sampling of a closed subset of [0,H] x [0,1]; rows are (time, value).
class PlanarGraph {
 public:
  using Points = Eigen::Matrix<double, Eigen::Dynamic, 2>;

  PlanarGraph(Points points, double res, double horizon);

  const Points& points() const { return points_; }
  double res() const { return res_; }
  double horizon() const { return horizon_; }
  std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }

 private:
  Points points_;
  double res_;
  double horizon_;
};

/// Accumulates polyline samples into a PlanarGraph.
class GraphBuilder {
 public:
  GraphBuilder(double res, double horizon) : res_(res), horizon_(horizon) {}

  /// Segment from a to b sampled at equal spacing <= res, endpoints included.
  void add_segment(double t0, double v0, double t1, double v1);
  void add_point(double t, double v) {
    t_.push_back(t);
    v_.push_back(v);
  }
  /// Vertical bar {t} x [lo, hi].
  void add_bar(double t, double lo, double hi) { add_segment(t, lo, t, hi); }
  /// Polyline resampled at equal arclength spacing <= res.
  void add_polyline(const Eigen::Ref<const Eigen::VectorXd>& times,
                    const Eigen::Ref<const Eigen::VectorXd>& values);

  PlanarGraph build() &&;

 private:
  double res_;
  double horizon_;
  std::vector<double> t_;
  std::vector<double> v_;
};

PlanarGraph graph_of_cadlag(const JumpPath& path, const TimeGrid& grid, double res);

/// Graph of the piecewise-linear interpolant of a path with values in [0,1].
/// Values outside [0,1] are a DomainError unless `clamp` is set.
PlanarGraph graph_of_continuous(const SamplePath& path, double res, bool clamp = false);

}  // namespace wonham
