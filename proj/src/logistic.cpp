#include "logbandit/logistic.hpp"

namespace logb {

double norm_for_kappa(double kappa) {
  if (kappa < 4.0) throw std::invalid_argument("norm_for_kappa: kappa must be >= 4");
  if (kappa == 4.0) return 0.0;
  // dsigmoid is strictly decreasing on [0, inf); bracket then bisect.
  double lo = 0.0, hi = 1.0;
  while (dsigmoid(hi) > 1.0 / kappa) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1500.0) throw std::invalid_argument("norm_for_kappa: kappa out of range");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (dsigmoid(mid) > 1.0 / kappa) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

AlphaCoeffs alpha_coeffs(double x, double y) {
  const double h = y - x;
  const double mx = sigmoid(x);

  double alpha;
  if (h == 0.0) {
    alpha = dsigmoid(x);
  } else if (std::fabs(h) <= 36.0) {
    // mu(y) - mu(x) = mu(x)(1 - mu(y)) expm1(h), stable for small h.
    alpha = mx * sigmoid(-y) * std::expm1(h) / h;
  } else if (h > 0.0) {
    // log-domain form; expm1(h) ~ e^h here.
    alpha = std::exp(h - softplus(-x) - softplus(y)) / h;
  } else {
    alpha = std::exp(-h - softplus(-y) - softplus(x)) / (-h);
  }

  double at;
  if (std::fabs(h) < 1e-6) {
    // Series around h = 0; the closed form loses ~eps*mu'/h digits there.
    at = 0.5 * dsigmoid(x) + h * d2sigmoid(x) / 6.0 + h * h * d3sigmoid(x) / 24.0;
  } else if (std::fabs(h) <= 36.0) {
    // softplus(y) - softplus(x) = log1p(mu(x) expm1(h)), computed in one shot
    // so the subtraction of h*mu(x) keeps absolute error O(eps*h).
    at = (std::log1p(mx * std::expm1(h)) - h * mx) / (h * h);
  } else {
    at = (softplus(y) - softplus(x) - h * mx) / (h * h);
  }

  return {alpha, at};
}

}  // namespace logb
