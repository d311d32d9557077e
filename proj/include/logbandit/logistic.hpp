#pragma once
// Scalar logistic primitives: the mean function, its derivatives, the binary
// log-loss, and the exact-Taylor remainder coefficients used for local
// curvature comparisons.

#include <cmath>
#include <stdexcept>

namespace logb {

// mu(x) = 1/(1+exp(-x)), branched on sign so large |x| saturates instead of
// overflowing. Never NaN for finite x.
inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// mu'(x) = mu(x)(1 - mu(x)), in (0, 1/4]. Symmetric in x; evaluated from the
// small tail so the product keeps full relative precision.
inline double dsigmoid(double x) {
  const double p = sigmoid(-std::fabs(x));
  return p * (1.0 - p);
}

inline double d2sigmoid(double x) {  // mu''
  return dsigmoid(x) * (1.0 - 2.0 * sigmoid(x));
}

inline double d3sigmoid(double x) {  // mu'''
  const double md = dsigmoid(x);
  const double c = 1.0 - 2.0 * sigmoid(x);
  return md * c * c - 2.0 * md * md;
}

// log(1 + exp(z)) without overflow.
inline double softplus(double z) {
  return std::fmax(z, 0.0) + std::log1p(std::exp(-std::fabs(z)));
}

struct LoglossValue {
  double value;
  double grad;  // d/dx = mu(x) - r
};

// Binary cross-entropy of the logit x against label r in {0,1}, via the
// log1p-of-exp form.
inline LoglossValue logloss(double x, int r) {
  if (r != 0 && r != 1) throw std::invalid_argument("logloss: label must be 0 or 1");
  const double value = (r == 1) ? softplus(-x) : softplus(x);
  return {value, sigmoid(x) - static_cast<double>(r)};
}

// kappa = 1 / min_{|z| <= S} mu'(z). The minimum sits at |z| = S, so the
// closed form is exact under unit-norm arms.
inline double kappa_of(double S) {
  if (S < 0.0) throw std::invalid_argument("kappa_of: S must be nonnegative");
  return 1.0 / dsigmoid(S);
}

// Inverse of kappa_of: the S >= 0 with 1/mu'(S) = kappa, by bisection.
// Requires kappa >= 4 (the value at S = 0).
double norm_for_kappa(double kappa);

struct AlphaCoeffs {
  double alpha;        // int_0^1 mu'(x + v(y-x)) dv
  double alpha_tilde;  // int_0^1 (1-v) mu'(x + v(y-x)) dv
};

// Closed forms of the exact-Taylor coefficients. alpha via
//   alpha = mu(x)(1-mu(y)) expm1(y-x)/(y-x),
// alpha_tilde via
//   alpha_tilde = (log1p(mu(x) expm1(h)) - h mu(x)) / h^2,  h = y-x,
// with a series fallback when |h| < 1e-6 to avoid catastrophic cancellation.
// Limits: alpha(x,x) = mu'(x), alpha_tilde(x,x) = mu'(x)/2.
AlphaCoeffs alpha_coeffs(double x, double y);

}  // namespace logb
