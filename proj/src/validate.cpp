#include "wonham/validate.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "wonham/coordinates.hpp"
#include "wonham/filter.hpp"
#include "wonham/hidden_markov.hpp"
#include "wonham/observation.hpp"
#include "wonham/smoother.hpp"
#include "wonham/spike_model.hpp"

namespace wonham {

bool ValidationReport::passed() const {
  for (const CheckResult& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

void ValidationReport::print(std::ostream& os) const {
  for (const CheckResult& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(20) << c.name
       << " measured=" << std::setprecision(6) << c.measured << " threshold=" << c.threshold;
    if (!c.detail.empty()) os << "  " << c.detail;
    os << '\n';
  }
}

namespace {

constexpr std::uint64_t kValidationCell = 0x7661'6c69'6461'7465ULL;

struct SimulatedFilter {
  JumpPath x;
  FilterPath filter;
  ObservationIncrements obs;
};

SimulatedFilter simulate(const ModelParams& model, double horizon, double dt, std::uint64_t seed,
                         std::uint64_t replica) {
  RngStream chain_rng = substream(seed, kValidationCell, replica, Stream::chain);
  RngStream noise_rng = substream(seed, kValidationCell, replica, Stream::brownian);
  const TimeGrid grid = build_grid(0.0, horizon, dt);
  JumpPath x = sample_jump_path(model, horizon, InitialLaw::stationary, chain_rng);
  ObservationIncrements obs = simulate_observation(x, model, grid, noise_rng);
  FilterPath filter = integrate_filter_logistic(obs, model, model.p);
  return {std::move(x), std::move(filter), std::move(obs)};
}

CheckResult check_additive_unit(const SamplePath& pi) {
  double worst = 0.0;
  const TimeGrid& g = pi.grid();
  const std::size_t n = g.steps();
  for (std::size_t k : {std::size_t{0}, n / 7, n / 3}) {
    for (std::size_t m : {n / 2, n - n / 5, n}) {
      const double s = g.time(k);
      const double t = g.time(m);
      const double a = additive_functional(pi, [](double) { return 1.0; }, s, t);
      worst = std::max(worst, std::abs(a - (t - s)));
    }
  }
  return {"additive_unit", worst <= 1e-12, worst, 1e-12, ""};
}

CheckResult check_exact_derivative(const SamplePath& pi, const ModelParams& model) {
  const DampingKernel kernel(pi, model);
  const std::size_t w = pi.grid().lag_steps(2.0 * std::log(model.gamma) / model.gamma);
  double worst = 0.0;
  for (std::size_t k = 0; k + w < pi.size(); k += std::max<std::size_t>(w, 1) * 3) {
    const double exact = -std::expm1(-kernel.integral(k, k + w));
    const double trap = trapezoid_discounted_damping(kernel, k, k + w);
    worst = std::max(worst, std::abs(trap - exact) / exact);
  }
  return {"exact_derivative", worst <= 1e-3, worst, 1e-3, "relative"};
}

CheckResult check_smoother_ode(const SamplePath& pi, const ModelParams& model) {
  const double delta = 10.0 * pi.grid().dt();
  const SmoothedPath a = smooth_path(pi, delta, model);
  const SmoothedPath b = smooth_backward_ode(pi, delta, model);
  const double sup = (a.pi_smoothed.values() - b.pi_smoothed.values()).cwiseAbs().maxCoeff();
  return {"smoother_ode", sup <= 1e-5, sup, 1e-5, "delta = 10 dt"};
}

CheckResult check_smoother_dual(const SamplePath& pi, const ModelParams& model) {
  const double delta = 2.0 * std::log(model.gamma) / model.gamma;
  const SmoothedPath a = smooth_path(pi, delta, model);
  const SmoothedPath b = smooth_path_dual(pi, delta, model);
  const double sup = (a.pi_smoothed.values() - b.pi_smoothed.values()).cwiseAbs().maxCoeff();
  return {"smoother_dual", sup <= 1e-9, sup, 1e-9, ""};
}

CheckResult check_cross_integrator(std::uint64_t seed) {
  const ModelParams model{1.3, 0.4, 1e2};
  RngStream chain_rng = substream(seed, kValidationCell, 100, Stream::chain);
  RngStream noise_rng = substream(seed, kValidationCell, 100, Stream::brownian);
  const TimeGrid grid = build_grid(0.0, 10.0, 1e-5);
  const JumpPath x = sample_jump_path(model, 10.0, InitialLaw::stationary, chain_rng);
  const auto obs = simulate_observation(x, model, grid, noise_rng);
  const FilterPath a = integrate_filter_pi(obs, model, model.p);
  const FilterPath b = integrate_filter_logistic(obs, model, model.p);
  const double sup = (a.pi().values() - b.pi().values()).cwiseAbs().maxCoeff();
  return {"cross_integrator", sup <= 0.05, sup, 0.05, "gamma = 100"};
}

/// b(u) = 0.6 sin(3u) - 0.4 u on [0, 1]
double synthetic_b(double u) { return 0.6 * std::sin(3.0 * u) - 0.4 * u; }
double synthetic_db(double u) { return 1.8 * std::cos(3.0 * u) - 0.4; }

/// RK4 for a' = b'(u) + e^{-a} from (u0, a0) to u1 with n steps (u1 may be < u0).
double rk4_residual(double u0, double a0, double u1, std::size_t n) {
  const double h = (u1 - u0) / static_cast<double>(n);
  auto f = [](double u, double a) { return synthetic_db(u) + std::exp(-a); };
  double a = a0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = u0 + static_cast<double>(i) * h;
    const double k1 = f(u, a);
    const double k2 = f(u + 0.5 * h, a + 0.5 * h * k1);
    const double k3 = f(u + 0.5 * h, a + 0.5 * h * k2);
    const double k4 = f(u + h, a + h * k3);
    a += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return a;
}

std::vector<CheckResult> check_transforms() {
  const TimeGrid grid = build_grid(0.0, 1.0, 1e-4);
  Eigen::VectorXd bv(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t k = 0; k < grid.size(); ++k) bv[static_cast<Eigen::Index>(k)] = synthetic_b(grid.time(k));
  const SamplePath b(grid, bv);

  double worst_fwd = 0.0;
  double worst_bwd = 0.0;
  for (double a0 : {-0.5, 0.3, 2.0}) {
    for (auto [s, t] : {std::pair{0.0, 1.0}, std::pair{0.2, 0.7}, std::pair{0.5, 0.9}}) {
      const double at = rk4_residual(s, a0, t, 20000);
      worst_fwd = std::max(worst_fwd, std::abs(forward_transform(b, a0, s, t) - (at - a0)));
      worst_bwd = std::max(worst_bwd, std::abs(backward_transform(b, at, s, t) - (at - a0)));
    }
  }
  return {{"backward_transform", worst_bwd <= 1e-6, worst_bwd, 1e-6, "vs RK4"},
          {"forward_transform", worst_fwd <= 1e-6, worst_fwd, 1e-6, "vs RK4"}};
}

std::vector<CheckResult> check_spikes(std::uint64_t seed) {
  const ModelParams model{1.3, 0.4, 1e4};
  const double horizon = 10.0;
  const double eps = 0.5;
  const double eta = 0.3;
  const std::size_t n = 1000;
  const JumpPath base = constant_path(0, horizon);

  double sum = 0.0;
  double sum2 = 0.0;
  std::size_t below = 0;
  for (std::size_t r = 0; r < n; ++r) {
    RngStream rng = substream(seed, kValidationCell, r, Stream::spikes);
    const SpikeSet set = sample_spike_process(base, eps, model, rng);
    const auto c = static_cast<double>(set.spikes().size());
    sum += c;
    sum2 += c * c;
    below += max_spike(set) <= 1.0 - eta ? 1 : 0;
  }
  const double nn = static_cast<double>(n);
  const double mean = sum / nn;
  const double se_count = std::sqrt(std::max(sum2 / nn - mean * mean, 0.0) / nn);
  const double expected = model.lambda * model.p * horizon * (1.0 / eps - 1.0);
  const double z_count = std::abs(mean - expected) / se_count;

  const double cdf = max_spike_cdf(base, eta, model);
  const double emp = static_cast<double>(below) / nn;
  const double se_cdf = std::sqrt(cdf * (1.0 - cdf) / nn);
  const double z_cdf = std::abs(emp - cdf) / se_cdf;

  std::ostringstream d1, d2;
  d1 << "mean=" << mean << " expected=" << expected << " (stderr units)";
  d2 << "empirical=" << emp << " closed_form=" << cdf << " (stderr units)";
  return {{"spike_count", z_count <= 3.0, z_count, 3.0, d1.str()},
          {"max_spike_cdf", z_cdf <= 3.0, z_cdf, 3.0, d2.str()}};
}

template <typename F>
void guarded(std::vector<CheckResult>& out, const std::string& name, F&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    out.push_back({name, false, std::nan(""), 0.0, std::string("error: ") + e.what()});
  }
}

}  // namespace

ValidationReport run_validation(std::uint64_t seed) {
  ValidationReport report;
  auto& out = report.checks;
  guarded(out, "simulated_path", [&] {
    const ModelParams model{1.3, 0.4, 1e3};
    const SimulatedFilter sim = simulate(model, 1.0, 1e-5, seed, 0);
    const SamplePath& pi = sim.filter.pi();
    guarded(out, "additive_unit", [&] { out.push_back(check_additive_unit(pi)); });
    guarded(out, "exact_derivative", [&] { out.push_back(check_exact_derivative(pi, model)); });
    guarded(out, "smoother_ode", [&] { out.push_back(check_smoother_ode(pi, model)); });
    guarded(out, "smoother_dual", [&] { out.push_back(check_smoother_dual(pi, model)); });
  });
  guarded(out, "cross_integrator", [&] { out.push_back(check_cross_integrator(seed)); });
  guarded(out, "path_transforms", [&] {
    for (auto& c : check_transforms()) out.push_back(std::move(c));
  });
  guarded(out, "spikes", [&] {
    for (auto& c : check_spikes(seed)) out.push_back(std::move(c));
  });
  return report;
}

}  // namespace wonham
