#include "wonham/model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wonham {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

// ---------------------------------------------------------------------------
// ExperimentConfig

ExperimentConfig::ExperimentConfig(const ConfigFields& fields) : f_(fields) {
  require(std::isfinite(f_.lambda) && f_.lambda > 0.0, "lambda must be > 0");
  require(std::isfinite(f_.p) && f_.p > 0.0 && f_.p < 1.0, "p must lie in (0,1)");
  require(std::isfinite(f_.gamma) && f_.gamma > 0.0, "gamma must be > 0");
  require(std::isfinite(f_.horizon) && f_.horizon > 0.0, "horizon must be > 0");
  require(std::isfinite(f_.dt) && f_.dt > 0.0, "dt must be > 0");
  require(f_.gamma * f_.dt <= kMaxGammaDt, "gamma*dt must be <= 0.5");
  require(std::isfinite(f_.smoothing.value) && f_.smoothing.value >= 0.0,
          "smoothing must be >= 0");
  const double d = delta();
  require(std::isfinite(d) && d >= 0.0, "resolved delta must be >= 0 (C form needs gamma > 1)");
  require(d < f_.horizon, "delta must be smaller than the horizon");
  require(f_.replicas >= 1, "replicas must be positive");
}

std::vector<std::string> ExperimentConfig::warnings() const {
  std::vector<std::string> out;
  if (f_.gamma * f_.dt > kWarnGammaDt) {
    std::ostringstream os;
    os << "gamma*dt = " << f_.gamma * f_.dt << " exceeds 0.1; Euler steps are coarse";
    out.push_back(os.str());
  }
  return out;
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require(doc.is_object(), "config must be a JSON object");

  ConfigFields f;
  auto number = [](const nlohmann::json& v, const std::string& key) {
    require(v.is_number(), "field '" + key + "' must be a number");
    return v.get<double>();
  };
  auto count = [](const nlohmann::json& v, const std::string& key) {
    require(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0),
            "field '" + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
  };

  for (const auto& [key, value] : doc.items()) {
    if (key == "lambda") {
      f.lambda = number(value, key);
    } else if (key == "p") {
      f.p = number(value, key);
    } else if (key == "gamma") {
      f.gamma = number(value, key);
    } else if (key == "horizon") {
      f.horizon = number(value, key);
    } else if (key == "dt") {
      f.dt = number(value, key);
    } else if (key == "seed") {
      f.seed = count(value, key);
    } else if (key == "replicas") {
      f.replicas = count(value, key);
    } else if (key == "smoothing") {
      require(value.is_object() && value.size() == 1,
              "field 'smoothing' must be {\"delta\": x} or {\"C\": x}");
      const auto& [kind, v] = *value.items().begin();
      if (kind == "delta") {
        f.smoothing = Smoothing::lag(number(v, "smoothing.delta"));
      } else if (kind == "C") {
        f.smoothing = Smoothing::coefficient(number(v, "smoothing.C"));
      } else {
        throw ConfigError("unknown smoothing kind '" + kind + "'");
      }
    } else {
      throw ConfigError("unknown config field '" + key + "'");
    }
  }
  return ExperimentConfig(f);
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::string ExperimentConfig::to_json() const {
  nlohmann::json doc;
  doc["lambda"] = f_.lambda;
  doc["p"] = f_.p;
  doc["gamma"] = f_.gamma;
  doc["horizon"] = f_.horizon;
  doc["dt"] = f_.dt;
  if (f_.smoothing.kind == Smoothing::Kind::delta) {
    doc["smoothing"] = {{"delta", f_.smoothing.value}};
  } else {
    doc["smoothing"] = {{"C", f_.smoothing.value}};
  }
  doc["seed"] = f_.seed;
  doc["replicas"] = f_.replicas;
  return doc.dump();
}

ExperimentConfig ExperimentConfig::with_gamma(double gamma) const {
  ConfigFields f = f_;
  f.gamma = gamma;
  return ExperimentConfig(f);
}

ExperimentConfig ExperimentConfig::with_smoothing(Smoothing s) const {
  ConfigFields f = f_;
  f.smoothing = s;
  return ExperimentConfig(f);
}

ExperimentConfig ExperimentConfig::with_horizon(double horizon) const {
  ConfigFields f = f_;
  f.horizon = horizon;
  return ExperimentConfig(f);
}

ExperimentConfig ExperimentConfig::with_seed(std::uint64_t seed) const {
  ConfigFields f = f_;
  f.seed = seed;
  return ExperimentConfig(f);
}

ExperimentConfig ExperimentConfig::with_replicas(std::uint64_t replicas) const {
  ConfigFields f = f_;
  f.replicas = replicas;
  return ExperimentConfig(f);
}

// ---------------------------------------------------------------------------
// TimeGrid

TimeGrid::TimeGrid(double t0, double dt, std::size_t n, double requested_end)
    : t0_(t0), dt_(dt), n_(n), requested_end_(requested_end) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time step must be > 0");
  if (n < 1) throw ConfigError("grid needs at least one step");
}

bool TimeGrid::short_of_horizon() const { return end() < requested_end_ - 1e-9 * dt_; }

std::size_t TimeGrid::index_of(double t) const {
  const double x = std::floor((t - t0_) / dt_ + 0.5);
  if (x <= 0.0) return 0;
  const auto k = static_cast<std::size_t>(x);
  return std::min(k, n_);
}

std::size_t TimeGrid::lag_steps(double delta) const {
  if (delta <= 0.0) return 0;
  return static_cast<std::size_t>(std::floor(delta / dt_ + 0.5));
}

TimeGrid build_grid(double t0, double horizon, double dt) {
  if (!(dt > 0.0)) throw ConfigError("time step must be > 0");
  if (!(horizon > t0)) throw ConfigError("horizon must exceed t0");
  const double steps = std::round((horizon - t0) / dt);
  if (steps < 1.0) throw ConfigError("horizon shorter than one time step");
  return TimeGrid(t0, dt, static_cast<std::size_t>(steps), horizon);
}

// ---------------------------------------------------------------------------
// JumpPath

JumpPath::JumpPath(int initial_state, std::vector<double> jump_times, double horizon)
    : initial_(initial_state), jumps_(std::move(jump_times)), horizon_(horizon) {
  if (initial_ != 0 && initial_ != 1) throw DomainError("initial state must be 0 or 1");
  if (!(horizon_ > 0.0)) throw DomainError("jump path horizon must be > 0");
  double prev = 0.0;
  for (double j : jumps_) {
    if (!(j > prev) || j > horizon_)
      throw DomainError("jump times must be strictly increasing inside (0, H]");
    prev = j;
  }
}

std::vector<JumpPath::Piece> JumpPath::pieces() const {
  std::vector<Piece> out;
  out.reserve(jumps_.size() + 1);
  double begin = 0.0;
  int s = initial_;
  for (double j : jumps_) {
    out.push_back({begin, j, s});
    begin = j;
    s = 1 - s;
  }
  if (begin < horizon_ || out.empty()) out.push_back({begin, horizon_, s});
  return out;
}

JumpPath JumpPath::truncated(double t) const {
  if (!(t > 0.0) || t > horizon_) throw DomainError("truncation time outside (0, H]");
  std::vector<double> kept;
  for (double j : jumps_) {
    if (j > t) break;
    kept.push_back(j);
  }
  return JumpPath(initial_, std::move(kept), t);
}

int state_at(const JumpPath& path, double t) {
  if (!(t >= 0.0) || t > path.horizon()) throw DomainError("state_at: time outside [0, H]");
  const auto& j = path.jump_times();
  const auto flips = std::upper_bound(j.begin(), j.end(), t) - j.begin();
  return (flips % 2 == 0) ? path.initial_state() : 1 - path.initial_state();
}

SamplePath sample_on_grid(const JumpPath& path, const TimeGrid& grid) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(grid.size()));
  const auto& j = path.jump_times();
  std::size_t next = 0;
  int s = path.initial_state();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid.time(k);
    while (next < j.size() && j[next] <= t) {
      s = 1 - s;
      ++next;
    }
    v[static_cast<Eigen::Index>(k)] = s;
  }
  return SamplePath(grid, std::move(v));
}

// ---------------------------------------------------------------------------
// Graphs

PlanarGraph::PlanarGraph(Points points, double res, double horizon)
    : points_(std::move(points)), res_(res), horizon_(horizon) {
  if (!(res_ > 0.0)) throw DomainError("graph resolution must be > 0");
  if (points_.rows() > 0) {
    const bool inside = (points_.col(0).array() >= 0.0).all() &&
                        (points_.col(0).array() <= horizon_).all() &&
                        (points_.col(1).array() >= 0.0).all() &&
                        (points_.col(1).array() <= 1.0).all();
    if (!inside) throw DomainError("graph points must lie in [0,H] x [0,1]");
  }
}

void GraphBuilder::add_segment(double t0, double v0, double t1, double v1) {
  const double len = std::hypot(t1 - t0, v1 - v0);
  const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil(len / res_ - 1e-9)));
  for (std::size_t i = 0; i <= m; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(m);
    t_.push_back(t0 + (t1 - t0) * u);
    v_.push_back(v0 + (v1 - v0) * u);
  }
}

void GraphBuilder::add_polyline(const Eigen::Ref<const Eigen::VectorXd>& times,
                                const Eigen::Ref<const Eigen::VectorXd>& values) {
  const Eigen::Index n = times.size();
  if (n == 0) return;
  if (n == 1) {
    t_.push_back(times[0]);
    v_.push_back(values[0]);
    return;
  }
  std::vector<double> cum(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index i = 1; i < n; ++i)
    cum[i] = cum[i - 1] + std::hypot(times[i] - times[i - 1], values[i] - values[i - 1]);
  const double total = cum.back();
  const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil(total / res_ - 1e-9)));
  const double step = total / static_cast<double>(m);
  Eigen::Index seg = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const double s = step * static_cast<double>(j);
    while (seg + 1 < n - 1 && cum[seg + 1] <= s) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double u = len > 0.0 ? std::clamp((s - cum[seg]) / len, 0.0, 1.0) : 0.0;
    t_.push_back(times[seg] + (times[seg + 1] - times[seg]) * u);
    v_.push_back(values[seg] + (values[seg + 1] - values[seg]) * u);
  }
  t_.push_back(times[n - 1]);
  v_.push_back(values[n - 1]);
}

PlanarGraph GraphBuilder::build() && {
  PlanarGraph::Points pts(static_cast<Eigen::Index>(t_.size()), 2);
  for (std::size_t i = 0; i < t_.size(); ++i) {
    pts(static_cast<Eigen::Index>(i), 0) = std::clamp(t_[i], 0.0, horizon_);
    pts(static_cast<Eigen::Index>(i), 1) = std::clamp(v_[i], 0.0, 1.0);
  }
  return PlanarGraph(std::move(pts), res_, horizon_);
}

PlanarGraph graph_of_cadlag(const JumpPath& path, const TimeGrid& grid, double res) {
  if (!(res > 0.0)) throw DomainError("graph resolution must be > 0");
  const double lo = grid.t0();
  const double hi = std::min(grid.end(), path.horizon());
  GraphBuilder b(res, grid.end());
  for (const auto& piece : path.pieces()) {
    const double a = std::max(piece.begin, lo);
    const double e = std::min(piece.end, hi);
    if (e < a) continue;
    b.add_segment(a, piece.state, e, piece.state);
  }
  for (double j : path.jump_times())
    if (j >= lo && j <= hi) b.add_bar(j, 0.0, 1.0);
  return std::move(b).build();
}

PlanarGraph graph_of_continuous(const SamplePath& path, double res, bool clamp) {
  if (!(res > 0.0)) throw DomainError("graph resolution must be > 0");
  Eigen::VectorXd v = path.values();
  if (clamp) {
    v = v.cwiseMax(0.0).cwiseMin(1.0);
  } else if ((v.array() < 0.0).any() || (v.array() > 1.0).any()) {
    throw DomainError("graph_of_continuous: values outside [0,1]");
  }
  const auto& g = path.grid();
  Eigen::VectorXd t(static_cast<Eigen::Index>(g.size()));
  for (std::size_t k = 0; k < g.size(); ++k) t[static_cast<Eigen::Index>(k)] = g.time(k);
  GraphBuilder b(res, g.end());
  b.add_polyline(t, v);
  return std::move(b).build();
}

}  // namespace wonham
