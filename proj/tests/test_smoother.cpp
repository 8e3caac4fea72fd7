#include <doctest.h>

#include "support.hpp"
#include "wonham/smoother.hpp"

using namespace wonham;
using doctest::Approx;

namespace {

const ModelParams kModel{1.3, 0.4, 1e3};

/// Filter on a simulated gamma = 1e3 path, H = 1, dt = 1e-5.
struct Fixture {
  testsupport::Simulation sim;
  FilterPath filter;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    auto sim = testsupport::simulate(kModel, 1.0, 1e-5, 21, 0);
    FilterPath filter = integrate_filter_logistic(sim.obs, kModel, kModel.p);
    return Fixture{std::move(sim), std::move(filter)};
  }();
  return f;
}

double constant_closed_form(double c, double h, const ModelParams& m) {
  const double a = damping_coefficient(c, m);
  return c * std::exp(-a * h) + m.rate10() * c / (1.0 - c) * (1.0 - std::exp(-a * h)) / a;
}

double sup_diff(const SamplePath& a, const SamplePath& b) {
  return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("damping coefficient") {
  const ModelParams m{1.3, 0.4, 1e2};
  CHECK(damping_coefficient(0.5, m) == Approx(1.3));
  CHECK(damping_coefficient(0.01, m) == Approx(1.3 * 0.6 * (0.01 / 0.99) + 1.3 * 0.4 * 99.0));
  CHECK(damping_coefficient(0.01, m) == Approx(51.49).epsilon(1e-3));
  const double lower = 2.0 * m.lambda * std::sqrt(m.p * (1.0 - m.p));
  const double r = std::sqrt(m.p / (1.0 - m.p));
  CHECK(damping_coefficient(r / (1.0 + r), m) == Approx(lower).epsilon(1e-14));
  for (int i = 1; i < 1000; ++i) CHECK(damping_coefficient(i / 1000.0, m) >= lower * (1.0 - 1e-14));
  CHECK_THROWS_AS(damping_coefficient(0.0, m), DomainError);
  CHECK_THROWS_AS(damping_coefficient(1.0, m), DomainError);
}

TEST_CASE("delta = 0 is the identity") {
  const auto& f = fixture();
  const DampingPath d = damping_window(f.filter.pi(), 0.0, kModel);
  CHECK(d.D.values().cwiseAbs().maxCoeff() == 0.0);
  CHECK(d.lag_steps == 0);
  CHECK(sup_diff(smooth_path(f.filter.pi(), 0.0, kModel).pi_smoothed, f.filter.pi()) == 0.0);
  CHECK(sup_diff(smooth_backward_ode(f.filter.pi(), 0.0, kModel).pi_smoothed, f.filter.pi()) == 0.0);
}

TEST_CASE("constant pi: D and the smoother in closed form") {
  const TimeGrid grid = build_grid(0.0, 1.0, 1e-3);
  for (double c : {0.02, 0.3, 0.5, 0.97}) {
    const SamplePath pi = testsupport::constant_sample(grid, c);
    const double delta = 0.1;
    const DampingPath d = damping_window(pi, delta, kModel);
    CHECK(d.D[500] == Approx(damping_coefficient(c, kModel) * delta).epsilon(1e-12));
    // boundary window truncated at t0
    CHECK(d.D[40] == Approx(damping_coefficient(c, kModel) * 0.04).epsilon(1e-12));

    const SmoothedPath s = smooth_path(pi, delta, kModel);
    const SmoothedPath o = smooth_backward_ode(pi, delta, kModel);
    CHECK(s.pi_smoothed[500] == Approx(constant_closed_form(c, delta, kModel)).epsilon(1e-10));
    CHECK(o.pi_smoothed[500] == Approx(constant_closed_form(c, delta, kModel)).epsilon(1e-8));
    CHECK(s.pi_smoothed[40] == Approx(constant_closed_form(c, 0.04, kModel)).epsilon(1e-10));
    CHECK(s.truncated_points == 100);
  }
}

TEST_CASE("delta is rounded to the grid") {
  const TimeGrid grid = build_grid(0.0, 1.0, 1e-3);
  const SamplePath pi = testsupport::constant_sample(grid, 0.3);
  const SmoothedPath s = smooth_path(pi, 0.01049, kModel);
  CHECK(s.lag_steps == 10);
  CHECK(std::abs(s.delta_used - 0.01049) <= 0.5e-3);
  CHECK(damping_window(pi, 0.01051, kModel).lag_steps == 11);
}

TEST_CASE("smooth_path agrees with the backward ODE, the dual and the single expression") {
  const auto& f = fixture();
  const SamplePath& pi = f.filter.pi();
  const double delta = 10.0 * pi.grid().dt();
  const SmoothedPath primal = smooth_path(pi, delta, kModel);
  CHECK(sup_diff(primal.pi_smoothed, smooth_backward_ode(pi, delta, kModel).pi_smoothed) <= 1e-5);

  for (double d : {delta, 2.0 * std::log(kModel.gamma) / kModel.gamma, 0.05}) {
    const SmoothedPath p = smooth_path(pi, d, kModel);
    CHECK(sup_diff(p.pi_smoothed, smooth_path_dual(pi, d, kModel).pi_smoothed) <= 1e-6);
    const SamplePath x = sample_on_grid(f.sim.x, pi.grid());
    CHECK(sup_diff(p.pi_smoothed, smooth_single_expression(pi, x, d, kModel)) <= 1e-6);
    CHECK(p.pi_smoothed.values().minCoeff() >= 0.0);
    CHECK(p.pi_smoothed.values().maxCoeff() <= 1.0);
  }
}

TEST_CASE("damping: lower bound, D nondecreasing in delta, matches the additive functional") {
  const auto& f = fixture();
  const SamplePath& pi = f.filter.pi();
  const double lower = 2.0 * kModel.lambda * std::sqrt(kModel.p * (1.0 - kModel.p));
  const DampingPath small = damping_window(pi, 0.005, kModel);
  const DampingPath large = damping_window(pi, 0.02, kModel);
  CHECK(small.a.values().minCoeff() >= lower * (1.0 - 1e-12));
  CHECK(small.D.values().minCoeff() >= 0.0);
  CHECK((large.D.values() - small.D.values()).minCoeff() >= 0.0);

  const std::function<double(double)> a = [](double v) { return damping_coefficient(v, kModel); };
  for (std::size_t k : {std::size_t{5000}, std::size_t{50000}, std::size_t{99999}}) {
    const double t = pi.grid().time(k);
    CHECK(additive_functional(pi, a, t - large.delta_used, t) == Approx(large.D[k]).epsilon(1e-9));
  }
}

TEST_CASE("additive functional") {
  const auto& f = fixture();
  const SamplePath& pi = f.filter.pi();
  CHECK(additive_functional(pi, [](double) { return 1.0; }, 0.2, 0.7) == Approx(0.5).epsilon(1e-12));
  CHECK(additive_functional(pi, [](double) { return 1.0; }, 0.3, 0.3) == 0.0);
  CHECK_THROWS_AS(additive_functional(pi, [](double) { return 1.0; }, 0.5, 0.2), DomainError);

  // occupation of [0.1, 0.9] against a left Riemann sum
  const auto indicator = [](double v) { return v >= 0.1 && v <= 0.9 ? 1.0 : 0.0; };
  double riemann = 0.0;
  for (std::size_t k = 0; k + 1 < pi.size(); ++k) riemann += indicator(pi[k]) * pi.grid().dt();
  CHECK(std::abs(additive_functional(pi, indicator, 0.0, 1.0) - riemann) <= pi.grid().dt());
}

TEST_CASE("exact derivative: int a e^{-int a} = 1 - e^{-int a}") {
  const auto& f = fixture();
  const DampingKernel kernel(f.filter.pi(), kModel);
  const std::size_t w = f.filter.grid().lag_steps(2.0 * std::log(kModel.gamma) / kModel.gamma);
  for (std::size_t m = w; m < f.filter.grid().size(); m += 997) {
    const double lhs = trapezoid_discounted_damping(kernel, m - w, m);
    const double rhs = 1.0 - kernel.survival(m - w, m);
    CHECK(lhs == Approx(rhs).epsilon(1e-3));
  }
}

TEST_CASE("no jump, pi near 0: smoothed value within delta / M0 of pi_t e^{-D}") {
  const auto& f = fixture();
  const SamplePath& pi = f.filter.pi();
  const double delta = 2.0 * std::log(kModel.gamma) / kModel.gamma;
  const SmoothedPath s = smooth_path(pi, delta, kModel);
  const DampingPath d = damping_window(pi, delta, kModel);
  const SamplePath x = sample_on_grid(f.sim.x, pi.grid());
  const std::size_t w = d.lag_steps;
  std::size_t checked = 0;
  for (std::size_t m = w; m < pi.size(); m += 101) {
    const auto window = x.values().segment(static_cast<Eigen::Index>(m - w), static_cast<Eigen::Index>(w + 1));
    if (window.maxCoeff() != 0.0) continue;
    const double m0 = 1.0 - pi.values().segment(static_cast<Eigen::Index>(m - w), static_cast<Eigen::Index>(w + 1)).maxCoeff();
    const double gap = std::abs(s.pi_smoothed[m] - pi[m] * std::exp(-d.D[m]));
    CHECK(gap <= d.delta_used / m0);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("kernel: prefix integrals and discounted integrals") {
  const TimeGrid grid = build_grid(0.0, 1.0, 0.25);
  Eigen::VectorXd v(5);
  v << 0.5, 0.2, 0.1, 0.3, 0.6;
  const SamplePath pi(grid, v);
  const DampingKernel kernel(pi, kModel);
  double trap = 0.0;
  for (std::size_t j = 1; j < 4; ++j) trap += 0.125 * (kernel.rate()[static_cast<Eigen::Index>(j)] + kernel.rate()[static_cast<Eigen::Index>(j + 1)]);
  CHECK(kernel.integral(1, 4) == Approx(trap));
  CHECK(kernel.step_integral(2) == Approx(0.125 * (kernel.rate()[2] + kernel.rate()[3])));
  CHECK(kernel.survival(2, 2) == 1.0);

  // q = 1: sum of q_j (1 - e^{-A_j}) discounted telescopes to 1 - e^{-A}
  const DiscountedIntegral ones(Eigen::VectorXd::Ones(5), kernel);
  CHECK(ones(0, 4) == Approx(1.0 - kernel.survival(0, 4)).epsilon(1e-14));
  CHECK(ones(1, 3) == Approx(1.0 - kernel.survival(1, 3)).epsilon(1e-14));
  CHECK(ones(2, 2) == 0.0);
}

TEST_CASE("smoother rejects mismatched inputs") {
  const auto& f = fixture();
  const TimeGrid other = build_grid(0.0, 1.0, 1e-3);
  CHECK_THROWS_AS(smooth_single_expression(f.filter.pi(), testsupport::constant_sample(other, 0.0), 0.01, kModel),
                  GridMismatch);
  CHECK_THROWS_AS(smooth_path(f.filter.pi(), -1.0, kModel), DomainError);
}
