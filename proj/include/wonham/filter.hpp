#pragma once

#include "wonham/model.hpp"
#include "wonham/observation.hpp"

namespace wonham {

struct FilterOptions {
  double clamp_eps = 1e-12;  ///< pi-space clamp and storage floor for pi
  double y_max = 500.0;      ///< cap on |Y| in the logistic integrator
  bool milstein = false;     ///< add the Milstein correction (pi-space only)
};

/// Filter trajectory in both coordinates, pi and Y = logit(pi).
class FilterPath {
 public:
  FilterPath(SamplePath pi, SamplePath y_logit, std::size_t clamp_events);

  const SamplePath& pi() const { return pi_; }
  const SamplePath& y_logit() const { return y_; }
  const TimeGrid& grid() const { return pi_.grid(); }
  /// Number of steps where the pi-space integrator hit its clamp.
  std::size_t clamp_events() const { return clamp_events_; }

 private:
  SamplePath pi_;
  SamplePath y_;
  std::size_t clamp_events_;
};

/// Euler-Maruyama in pi-space:
///   pi += -lambda (pi - p) dt + gamma pi (1 - pi) (dy - pi dt),
/// clamped to [eps, 1 - eps]. Requires gamma dt <= 0.5.
FilterPath integrate_filter_pi(const ObservationIncrements& obs, const ModelParams& model,
                               double pi0, const FilterOptions& options = {});

/// Logistic coordinates:
///   dY = gamma (dy - dt/2) + (lambda(2p-1) + lambda p e^{-Y} - lambda(1-p) e^{Y}) dt.
///
/// The observation part is an Euler step. The drift is the relaxation
/// d pi = -lambda (pi - p) dt written in Y, and is applied as its exact flow
/// over each step, so the stiff exponential terms cannot overshoot.
FilterPath integrate_filter_logistic(const ObservationIncrements& obs, const ModelParams& model,
                                     double pi0, const FilterOptions& options = {});

/// Exact flow over dt of dY = (lambda(2p-1) + lambda p e^{-Y} - lambda(1-p) e^{Y}) dt.
double relaxation_flow(double y, const ModelParams& model, double dt);

/// dW_k = sqrt(gamma) (dy_k - pi_k dt), k = 0..n-1.
Eigen::VectorXd innovation_increments(const ObservationIncrements& obs, const SamplePath& pi,
                                      const ModelParams& model);

/// Cumulated innovation W_{t_k}, W_0 = 0.
SamplePath innovation_path(const ObservationIncrements& obs, const SamplePath& pi,
                           const ModelParams& model);

}  // namespace wonham
