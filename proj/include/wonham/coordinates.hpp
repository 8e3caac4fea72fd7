#pragma once

#include <cmath>

#include "wonham/model.hpp"

namespace wonham {

class FilterPath;
class ObservationIncrements;

/// log(x / (1 - x)), evaluated as log(x) - log1p(-x) to keep precision near 0.
template <typename Scalar>
Scalar logit(Scalar x) {
  using std::log;
  using std::log1p;
  if (!(x > Scalar(0)) || !(x < Scalar(1))) throw DomainError("logit: argument outside (0,1)");
  return log(x) - log1p(-x);
}

/// 1 / (1 + e^{-y}), branch-stable for both signs.
template <typename Scalar>
Scalar logistic(Scalar y) {
  using std::exp;
  if (y >= Scalar(0)) return Scalar(1) / (Scalar(1) + exp(-y));
  const Scalar e = exp(y);
  return e / (Scalar(1) + e);
}

/// g(y) = p (1/y + log((1-y)/y)) + (1-p) (1/(1-y) + log(y/(1-y))).
template <typename Scalar>
Scalar scale_g(Scalar y, double p) {
  if (!(y > Scalar(0)) || !(y < Scalar(1))) throw DomainError("scale_g: argument outside (0,1)");
  const Scalar l = logit(y);
  return p * (Scalar(1) / y - l) + (1.0 - p) * (Scalar(1) / (Scalar(1) - y) + l);
}

/// Scale function h(x) = x0 + int_{x0}^{x} exp((2 lambda / gamma) g(y)) dy.
///
/// Adaptive Simpson quadrature; each interval is halved until the Simpson and
/// two-panel estimates agree within `tol` (scaled to the interval).
/// Throws QuadratureError when the recursion limit is reached first.
double scale_h(double x, const ModelParams& model, double x0 = 0.5, double tol = 1e-9);

/// a_t = Y_t - log(lambda p), b_t = sqrt(gamma) W_t - gamma t / 2 + r_t and the
/// residual r, which together satisfy da = db + e^{-a} dt.
struct ResidualDecomposition {
  SamplePath a_path;
  SamplePath b_path;
  SamplePath r_path;
};

/// Integrand of r is lambda(2p-1) - lambda(1-p) e^Y + gamma pi, using
/// 1 + tanh(Y/2) = 2 pi; r is its cumulative trapezoid. W is the innovation
/// built from `obs` and the filter.
ResidualDecomposition residual_decompose(const FilterPath& filter,
                                         const ObservationIncrements& obs,
                                         const ModelParams& model);

/// Backward path transform: a_t - a_s = b_{s,t} - log(1 - e^{-a_t} int_s^t e^{b_t - b_u} du).
/// Throws SingularWindowError when the log argument is not positive.
double backward_transform(const SamplePath& b, double a_terminal, double s, double t);

/// Forward path transform: a_t - a_s = b_{s,t} + log(1 + e^{-a_s} int_s^t e^{-(b_u - b_s)} du).
double forward_transform(const SamplePath& b, double a_initial, double s, double t);

}  // namespace wonham
