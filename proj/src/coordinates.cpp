#include "wonham/coordinates.hpp"

#include <algorithm>

#include "wonham/filter.hpp"
#include "wonham/observation.hpp"

namespace wonham {

namespace {

struct SimpsonPanel {
  double a, b, fa, fm, fb, whole;
};

template <typename F>
double adaptive_simpson(const F& f, const SimpsonPanel& p, double tol, int depth) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m);
  const double rm = 0.5 * (m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
  const double right = (p.b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
  const double diff = left + right - p.whole;
  if (std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  if (depth <= 0) throw QuadratureError("scale_h: adaptive quadrature did not converge");
  return adaptive_simpson(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1);
}

/// log(1 + e^z) without overflow.
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

/// log of the trapezoid integral of e^{ref - b_u} over [t_k, t_m], log-sum-exp guarded.
double log_trapezoid_exp(const SamplePath& b, std::size_t k, std::size_t m, double ref) {
  double top = -INFINITY;
  for (std::size_t j = k; j <= m; ++j) top = std::max(top, ref - b[j]);
  double sum = 0.0;
  for (std::size_t j = k; j <= m; ++j) {
    const double weight = (j == k || j == m) ? 0.5 : 1.0;
    sum += weight * std::exp(ref - b[j] - top);
  }
  return top + std::log(sum * b.grid().dt());
}

}  // namespace

double scale_h(double x, const ModelParams& model, double x0, double tol) {
  if (!(x > 0.0 && x < 1.0) || !(x0 > 0.0 && x0 < 1.0))
    throw DomainError("scale_h: arguments must lie in (0,1)");
  if (!(model.gamma > 0.0)) throw ConfigError("scale_h needs gamma > 0");
  if (x == x0) return x0;
  const double k = 2.0 * model.lambda / model.gamma;
  auto integrand = [&](double y) { return std::exp(k * scale_g(y, model.p)); };
  const double lo = std::min(x, x0);
  const double hi = std::max(x, x0);
  const double flo = integrand(lo);
  const double fhi = integrand(hi);
  const double fmid = integrand(0.5 * (lo + hi));
  const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  const double value = adaptive_simpson(integrand, {lo, hi, flo, fmid, fhi, whole}, tol, 48);
  if (!std::isfinite(value)) throw QuadratureError("scale_h: integral is not finite");
  return x0 + (x > x0 ? value : -value);
}

ResidualDecomposition residual_decompose(const FilterPath& filter,
                                         const ObservationIncrements& obs,
                                         const ModelParams& model) {
  const TimeGrid& grid = filter.grid();
  if (!(grid == obs.grid())) throw GridMismatch("filter and observation grids differ");
  const Eigen::VectorXd& y = filter.y_logit().values();
  const Eigen::VectorXd& pi = filter.pi().values();
  const Eigen::Index n = y.size();

  Eigen::VectorXd a = y.array() - std::log(model.rate01());
  const Eigen::VectorXd rho = (model.lambda * (2.0 * model.p - 1.0) -
                               model.rate10() * y.array().exp() + model.gamma * pi.array())
                                  .matrix();
  Eigen::VectorXd r(n);
  r[0] = 0.0;
  const double half = 0.5 * grid.dt();
  for (Eigen::Index k = 0; k + 1 < n; ++k) r[k + 1] = r[k] + half * (rho[k] + rho[k + 1]);

  const SamplePath w = innovation_path(obs, filter.pi(), model);
  const double sg = std::sqrt(model.gamma);
  Eigen::VectorXd b(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = grid.time(static_cast<std::size_t>(k)) - grid.t0();
    b[k] = sg * w[static_cast<std::size_t>(k)] - 0.5 * model.gamma * t + r[k];
  }
  return {SamplePath(grid, std::move(a)), SamplePath(grid, std::move(b)),
          SamplePath(grid, std::move(r))};
}

double backward_transform(const SamplePath& b, double a_terminal, double s, double t) {
  if (!(s <= t)) throw DomainError("backward_transform needs s <= t");
  const std::size_t k = b.grid().index_of(s);
  const std::size_t m = b.grid().index_of(t);
  if (k == m) return 0.0;
  const double bt = b[m];
  const double log_integral = log_trapezoid_exp(b, k, m, bt);
  const double log_ratio = log_integral - a_terminal;
  if (log_ratio >= 0.0)
    throw SingularWindowError("backward transform: log argument is not positive on [" +
                              std::to_string(s) + ", " + std::to_string(t) + "]");
  return (bt - b[k]) - std::log1p(-std::exp(log_ratio));
}

double forward_transform(const SamplePath& b, double a_initial, double s, double t) {
  if (!(s <= t)) throw DomainError("forward_transform needs s <= t");
  const std::size_t k = b.grid().index_of(s);
  const std::size_t m = b.grid().index_of(t);
  if (k == m) return 0.0;
  const double bs = b[k];
  const double log_integral = log_trapezoid_exp(b, k, m, bs);
  return (b[m] - bs) + softplus(log_integral - a_initial);
}

}  // namespace wonham
