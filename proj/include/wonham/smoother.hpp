#pragma once

#include <functional>

#include "wonham/filter.hpp"
#include "wonham/model.hpp"

namespace wonham {

/// Instantaneous damping a(pi) = lambda(1-p) pi/(1-pi) + lambda p (1-pi)/pi.
template <typename Scalar>
Scalar damping_coefficient(Scalar pi, const ModelParams& m) {
  if (!(pi > Scalar(0)) || !(pi < Scalar(1)))
    throw DomainError("damping_coefficient: pi at or outside the boundary of (0,1)");
  return m.rate10() * pi / (Scalar(1) - pi) + m.rate01() * (Scalar(1) - pi) / pi;
}

/// Grid values of a(pi) together with compensated prefix integrals of a.
///
/// The cumulative integral A_k = int_0^{t_k} a uses the trapezoid rule and is
/// stored as a Kahan (sum, compensation) pair, so window integrals
/// A_m - A_k stay accurate after 10^6 steps of a = O(gamma).
class DampingKernel {
 public:
  DampingKernel(const SamplePath& pi, const ModelParams& model);

  const TimeGrid& grid() const { return grid_; }
  const Eigen::VectorXd& rate() const { return a_; }
  /// Trapezoid integral of a over [t_k, t_m], k <= m.
  double integral(std::size_t k, std::size_t m) const;
  /// e^{-int_{t_k}^{t_m} a}.
  double survival(std::size_t k, std::size_t m) const { return std::exp(-integral(k, m)); }
  /// Trapezoid integral of a over step j.
  double step_integral(std::size_t j) const;

 private:
  TimeGrid grid_;
  Eigen::VectorXd a_;
  Eigen::VectorXd sum_;
  Eigen::VectorXd comp_;
};

/// Windowed integrals I(k, m) = int_{t_k}^{t_m} q_u a_u e^{-int_{t_k}^u a} du
/// for a weight q with values in [0,1].
///
/// Over each step the rate is the trapezoid mean of a and q its two-point
/// mean, so the step contributes q_j (1 - e^{-A_j}) exactly. All windows are
/// served from one backward sweep Phi_k = I(k, n), using
/// I(k, m) = Phi_k - e^{-(A_m - A_k)} Phi_m.
class DiscountedIntegral {
 public:
  DiscountedIntegral(const Eigen::VectorXd& weight, const DampingKernel& kernel);
  double operator()(std::size_t k, std::size_t m) const;

 private:
  const DampingKernel* kernel_;
  Eigen::VectorXd phi_;
};

/// Damping a_u along the path and D_t = int_{t-delta}^t a_u du.
struct DampingPath {
  SamplePath a;
  SamplePath D;
  std::size_t lag_steps;  ///< delta rounded to the grid
  double delta_used;      ///< lag_steps * dt
};

/// D by trapezoid over the trailing window; windows are truncated at t0 for t < delta.
DampingPath damping_window(const SamplePath& pi, double delta, const ModelParams& model);

/// pi^{delta}_t = pi_{t-delta, t}; for t < delta the window starts at t0.
struct SmoothedPath {
  SamplePath pi_smoothed;
  std::size_t lag_steps;
  double delta_used;
  /// Number of leading grid points where the window was truncated at t0.
  std::size_t truncated_points;
};

/// Closed-form fixed-lag smoother
///   pi_{s,t} = pi_t e^{-int_s^t a} + int_s^t lambda(1-p) pi/(1-pi) e^{-int_s^u a} du.
/// Results within 1e-9 of [0,1] are clipped; larger excursions raise QuadratureError.
SmoothedPath smooth_path(const SamplePath& pi, double delta, const ModelParams& model);

/// Same quantity from the dual expression, returned as 1 - (dual value):
///   1 - pi_{s,t} = (1-pi_t) e^{-int_s^t a} + int_s^t lambda p (1-pi)/pi e^{-int_s^u a} du.
SmoothedPath smooth_path_dual(const SamplePath& pi, double delta, const ModelParams& model);

/// Independent route: RK4 in s of d/ds pi_{s,t} = -lambda(1-p) pi_s/(1-pi_s) + pi_{s,t} a_s,
/// integrated backward from pi_{t,t} = pi_t with piecewise-linear coefficients.
SmoothedPath smooth_backward_ode(const SamplePath& pi, double delta, const ModelParams& model);

/// Decomposition pi_{s,t} = x_t + (pi_t - x_t) e^{-D} + 1{x_t=0} I_1 - 1{x_t=1} I_0,
/// evaluated with the hidden state known. Returns the reconstructed path.
SamplePath smooth_single_expression(const SamplePath& pi, const SamplePath& x, double delta,
                                    const ModelParams& model);

/// A_{s,t}(f) = int_s^t f(pi_u) du by trapezoid, s and t snapped to the grid.
double additive_functional(const SamplePath& pi, const std::function<double(double)>& f,
                           double s, double t);

/// Composite trapezoid of a_u e^{-int_s^u a} over [s, t] (plain rule, independent of
/// DiscountedIntegral). Used to check the exact-derivative identity.
double trapezoid_discounted_damping(const DampingKernel& kernel, std::size_t k, std::size_t m);

}  // namespace wonham
