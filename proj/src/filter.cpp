#include "wonham/filter.hpp"

#include <algorithm>

#include "wonham/coordinates.hpp"

namespace wonham {

FilterPath::FilterPath(SamplePath pi, SamplePath y_logit, std::size_t clamp_events)
    : pi_(std::move(pi)), y_(std::move(y_logit)), clamp_events_(clamp_events) {
  if (!(pi_.grid() == y_.grid())) throw GridMismatch("pi and Y grids differ");
}

namespace {

void check_inputs(const ObservationIncrements& obs, const ModelParams& model, double pi0) {
  if (!(pi0 > 0.0) || !(pi0 < 1.0)) throw DomainError("initial filter value must lie in (0,1)");
  if (!(model.gamma >= 0.0)) throw ConfigError("gamma must be >= 0");
  if (model.gamma * obs.grid().dt() > ExperimentConfig::kMaxGammaDt)
    throw ConfigError("gamma*dt must be <= 0.5");
}

}  // namespace

FilterPath integrate_filter_pi(const ObservationIncrements& obs, const ModelParams& model,
                               double pi0, const FilterOptions& options) {
  check_inputs(obs, model, pi0);
  const double dt = obs.grid().dt();
  const double lo = options.clamp_eps;
  const double hi = 1.0 - options.clamp_eps;
  const auto& dy = obs.dy();
  const Eigen::Index n = dy.size();

  Eigen::VectorXd pi(n + 1);
  pi[0] = std::clamp(pi0, lo, hi);
  std::size_t clamps = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double x = pi[k];
    const double vol = x * (1.0 - x);
    const double innov = dy[k] - x * dt;
    double next = x - model.lambda * (x - model.p) * dt + model.gamma * vol * innov;
    if (options.milstein) {
      // sigma sigma' / 2 (dW^2 - dt) with sigma = sqrt(gamma) pi (1 - pi)
      const double dW2 = model.gamma * innov * innov;
      next += 0.5 * model.gamma * vol * (1.0 - 2.0 * x) * (dW2 - dt);
    }
    if (!std::isfinite(next)) throw IntegrationError("pi-space filter diverged", static_cast<std::size_t>(k));
    if (next < lo || next > hi) {
      next = std::clamp(next, lo, hi);
      ++clamps;
    }
    pi[k + 1] = next;
  }
  Eigen::VectorXd y = pi.unaryExpr([](double v) { return logit(v); });
  return FilterPath(SamplePath(obs.grid(), std::move(pi)), SamplePath(obs.grid(), std::move(y)),
                    clamps);
}

double relaxation_flow(double y, const ModelParams& model, double dt) {
  // pi -> p + (pi - p) e^{-lambda dt}, carried out on pi and 1 - pi separately
  const double e = std::exp(-model.lambda * dt);
  const double q = logistic(y) * e + model.p * (1.0 - e);
  const double r = logistic(-y) * e + (1.0 - model.p) * (1.0 - e);
  return std::log(q) - std::log(r);
}

FilterPath integrate_filter_logistic(const ObservationIncrements& obs, const ModelParams& model,
                                     double pi0, const FilterOptions& options) {
  check_inputs(obs, model, pi0);
  const double dt = obs.grid().dt();
  const double half = 0.5 * dt;
  const double ymax = options.y_max;
  const double lo = options.clamp_eps;
  const double hi = 1.0 - options.clamp_eps;
  const auto& dy = obs.dy();
  const Eigen::Index n = dy.size();

  Eigen::VectorXd y(n + 1);
  Eigen::VectorXd pi(n + 1);
  y[0] = logit(pi0);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double shifted = y[k] + model.gamma * (dy[k] - half);
    if (!std::isfinite(shifted)) throw IntegrationError("logistic filter diverged", static_cast<std::size_t>(k));
    y[k + 1] = std::clamp(relaxation_flow(std::clamp(shifted, -ymax, ymax), model, dt), -ymax, ymax);
  }
  // Stored pi is floored at clamp_eps so that pi stays inside (0,1) in double
  // precision; this moves it by at most clamp_eps from logistic(Y).
  for (Eigen::Index k = 0; k <= n; ++k) pi[k] = std::clamp(logistic(y[k]), lo, hi);
  return FilterPath(SamplePath(obs.grid(), std::move(pi)), SamplePath(obs.grid(), std::move(y)),
                    0);
}

Eigen::VectorXd innovation_increments(const ObservationIncrements& obs, const SamplePath& pi,
                                      const ModelParams& model) {
  if (!(obs.grid() == pi.grid())) throw GridMismatch("innovation: observation and filter grids differ");
  const Eigen::Index n = obs.dy().size();
  const double dt = obs.grid().dt();
  return std::sqrt(model.gamma) * (obs.dy() - pi.values().head(n) * dt);
}

SamplePath innovation_path(const ObservationIncrements& obs, const SamplePath& pi,
                           const ModelParams& model) {
  const Eigen::VectorXd dW = innovation_increments(obs, pi, model);
  Eigen::VectorXd w(dW.size() + 1);
  w[0] = 0.0;
  for (Eigen::Index k = 0; k < dW.size(); ++k) w[k + 1] = w[k] + dW[k];
  return SamplePath(obs.grid(), std::move(w));
}

}  // namespace wonham
