#include "wonham/smoother.hpp"

#include <algorithm>

namespace wonham {

namespace {

constexpr double kClipTolerance = 1e-9;

double finalize_probability(double v, std::size_t index) {
  if (!std::isfinite(v) || v < -kClipTolerance || v > 1.0 + kClipTolerance)
    throw QuadratureError("smoothed value " + std::to_string(v) + " outside [0,1] at index " +
                          std::to_string(index));
  return std::clamp(v, 0.0, 1.0);
}

/// Share of the damping carried by the 1 -> 0 term, lambda(1-p) pi/(1-pi) / a(pi).
Eigen::VectorXd weight_from_one(const SamplePath& pi, const ModelParams& m) {
  return pi.values().unaryExpr([&](double x) {
    const double c1 = m.rate10() * x / (1.0 - x);
    const double c0 = m.rate01() * (1.0 - x) / x;
    return c1 / (c1 + c0);
  });
}

Eigen::VectorXd weight_from_zero(const SamplePath& pi, const ModelParams& m) {
  return pi.values().unaryExpr([&](double x) {
    const double c1 = m.rate10() * x / (1.0 - x);
    const double c0 = m.rate01() * (1.0 - x) / x;
    return c0 / (c1 + c0);
  });
}

std::size_t window_start(std::size_t m, std::size_t w) { return m >= w ? m - w : 0; }

}  // namespace

// ---------------------------------------------------------------------------
// DampingKernel

DampingKernel::DampingKernel(const SamplePath& pi, const ModelParams& model) : grid_(pi.grid()) {
  a_ = pi.values().unaryExpr([&](double x) { return damping_coefficient(x, model); });
  const Eigen::Index n = a_.size();
  sum_.resize(n);
  comp_.resize(n);
  sum_[0] = 0.0;
  comp_[0] = 0.0;
  const double half = 0.5 * grid_.dt();
  double s = 0.0;
  double c = 0.0;
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    const double y = half * (a_[j] + a_[j + 1]) - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
    sum_[j + 1] = s;
    comp_[j + 1] = c;
  }
}

double DampingKernel::integral(std::size_t k, std::size_t m) const {
  if (k >= m) return 0.0;
  const auto ik = static_cast<Eigen::Index>(k);
  const auto im = static_cast<Eigen::Index>(m);
  return std::max(0.0, (sum_[im] - sum_[ik]) - (comp_[im] - comp_[ik]));
}

double DampingKernel::step_integral(std::size_t j) const {
  const auto i = static_cast<Eigen::Index>(j);
  return 0.5 * grid_.dt() * (a_[i] + a_[i + 1]);
}

// ---------------------------------------------------------------------------
// DiscountedIntegral

DiscountedIntegral::DiscountedIntegral(const Eigen::VectorXd& weight, const DampingKernel& kernel)
    : kernel_(&kernel) {
  const Eigen::Index n = kernel.rate().size();
  if (weight.size() != n) throw GridMismatch("weight length does not match the damping kernel");
  phi_.resize(n);
  phi_[n - 1] = 0.0;
  for (Eigen::Index j = n - 2; j >= 0; --j) {
    const double step = kernel.step_integral(static_cast<std::size_t>(j));
    const double mean_w = 0.5 * (weight[j] + weight[j + 1]);
    phi_[j] = -mean_w * std::expm1(-step) + std::exp(-step) * phi_[j + 1];
  }
}

double DiscountedIntegral::operator()(std::size_t k, std::size_t m) const {
  if (k >= m) return 0.0;
  const double tail = kernel_->survival(k, m) * phi_[static_cast<Eigen::Index>(m)];
  return std::max(0.0, phi_[static_cast<Eigen::Index>(k)] - tail);
}

// ---------------------------------------------------------------------------
// Damping and smoothing

DampingPath damping_window(const SamplePath& pi, double delta, const ModelParams& model) {
  if (!(delta >= 0.0)) throw DomainError("delta must be >= 0");
  const DampingKernel kernel(pi, model);
  const std::size_t w = pi.grid().lag_steps(delta);
  Eigen::VectorXd d(static_cast<Eigen::Index>(pi.size()));
  for (std::size_t m = 0; m < pi.size(); ++m)
    d[static_cast<Eigen::Index>(m)] = kernel.integral(window_start(m, w), m);
  return {SamplePath(pi.grid(), kernel.rate()), SamplePath(pi.grid(), std::move(d)), w,
          static_cast<double>(w) * pi.grid().dt()};
}

SmoothedPath smooth_path(const SamplePath& pi, double delta, const ModelParams& model) {
  if (!(delta >= 0.0)) throw DomainError("delta must be >= 0");
  const DampingKernel kernel(pi, model);
  const DiscountedIntegral jump_in(weight_from_one(pi, model), kernel);
  const std::size_t w = pi.grid().lag_steps(delta);
  Eigen::VectorXd out(static_cast<Eigen::Index>(pi.size()));
  for (std::size_t m = 0; m < pi.size(); ++m) {
    const std::size_t k = window_start(m, w);
    const double v = pi[m] * kernel.survival(k, m) + jump_in(k, m);
    out[static_cast<Eigen::Index>(m)] = finalize_probability(v, m);
  }
  return {SamplePath(pi.grid(), std::move(out)), w, static_cast<double>(w) * pi.grid().dt(),
          std::min(w, pi.size())};
}

SmoothedPath smooth_path_dual(const SamplePath& pi, double delta, const ModelParams& model) {
  if (!(delta >= 0.0)) throw DomainError("delta must be >= 0");
  const DampingKernel kernel(pi, model);
  const DiscountedIntegral jump_out(weight_from_zero(pi, model), kernel);
  const std::size_t w = pi.grid().lag_steps(delta);
  Eigen::VectorXd out(static_cast<Eigen::Index>(pi.size()));
  for (std::size_t m = 0; m < pi.size(); ++m) {
    const std::size_t k = window_start(m, w);
    const double complement = (1.0 - pi[m]) * kernel.survival(k, m) + jump_out(k, m);
    out[static_cast<Eigen::Index>(m)] = finalize_probability(1.0 - complement, m);
  }
  return {SamplePath(pi.grid(), std::move(out)), w, static_cast<double>(w) * pi.grid().dt(),
          std::min(w, pi.size())};
}

SmoothedPath smooth_backward_ode(const SamplePath& pi, double delta, const ModelParams& model) {
  if (!(delta >= 0.0)) throw DomainError("delta must be >= 0");
  const Eigen::VectorXd a =
      pi.values().unaryExpr([&](double x) { return damping_coefficient(x, model); });
  const Eigen::VectorXd c = pi.values().unaryExpr([&](double x) { return model.rate10() * x / (1.0 - x); });
  const double h = pi.grid().dt();
  const std::size_t w = pi.grid().lag_steps(delta);

  // In reversed time sigma = -s: dv/dsigma = c - v a.
  auto rhs = [](double av, double cv, double v) { return cv - v * av; };

  Eigen::VectorXd out(static_cast<Eigen::Index>(pi.size()));
  for (std::size_t m = 0; m < pi.size(); ++m) {
    const std::size_t k = window_start(m, w);
    double v = pi[m];
    for (std::size_t j = m; j > k; --j) {
      const auto hi = static_cast<Eigen::Index>(j);
      const auto lo = hi - 1;
      const double a_mid = 0.5 * (a[hi] + a[lo]);
      const double c_mid = 0.5 * (c[hi] + c[lo]);
      const double k1 = rhs(a[hi], c[hi], v);
      const double k2 = rhs(a_mid, c_mid, v + 0.5 * h * k1);
      const double k3 = rhs(a_mid, c_mid, v + 0.5 * h * k2);
      const double k4 = rhs(a[lo], c[lo], v + h * k3);
      v += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    out[static_cast<Eigen::Index>(m)] = finalize_probability(v, m);
  }
  return {SamplePath(pi.grid(), std::move(out)), w, static_cast<double>(w) * h,
          std::min(w, pi.size())};
}

SamplePath smooth_single_expression(const SamplePath& pi, const SamplePath& x, double delta,
                                    const ModelParams& model) {
  if (!(pi.grid() == x.grid())) throw GridMismatch("filter and hidden-state grids differ");
  const DampingKernel kernel(pi, model);
  const DiscountedIntegral jump_in(weight_from_one(pi, model), kernel);
  const DiscountedIntegral jump_out(weight_from_zero(pi, model), kernel);
  const std::size_t w = pi.grid().lag_steps(delta);
  Eigen::VectorXd out(static_cast<Eigen::Index>(pi.size()));
  for (std::size_t m = 0; m < pi.size(); ++m) {
    const std::size_t k = window_start(m, w);
    const double xt = x[m];
    const double base = xt + (pi[m] - xt) * kernel.survival(k, m);
    out[static_cast<Eigen::Index>(m)] = xt < 0.5 ? base + jump_in(k, m) : base - jump_out(k, m);
  }
  return SamplePath(pi.grid(), std::move(out));
}

double additive_functional(const SamplePath& pi, const std::function<double(double)>& f,
                           double s, double t) {
  if (!(s <= t)) throw DomainError("additive_functional needs s <= t");
  const std::size_t k = pi.grid().index_of(s);
  const std::size_t m = pi.grid().index_of(t);
  if (k == m) return 0.0;
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t j = k; j <= m; ++j) {
    const double y = f(pi[j]) - comp;
    const double next = sum + y;
    comp = (next - sum) - y;
    sum = next;
  }
  const double ends = 0.5 * (f(pi[k]) + f(pi[m]));
  return pi.grid().dt() * ((sum - ends) - comp);
}

double trapezoid_discounted_damping(const DampingKernel& kernel, std::size_t k, std::size_t m) {
  const auto& a = kernel.rate();
  const double half = 0.5 * kernel.grid().dt();
  double cumulative = 0.0;
  double total = 0.0;
  for (std::size_t j = k; j < m; ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    const double left = a[i] * std::exp(-cumulative);
    cumulative += half * (a[i] + a[i + 1]);
    const double right = a[i + 1] * std::exp(-cumulative);
    total += half * (left + right);
  }
  return total;
}

}  // namespace wonham
