#pragma once
// Problem constants and the slowly-growing radius schedules
// lambda_t, gamma_t, beta_t, nu_t, sigma_t, eta_t. All formulas use the
// natural logarithm, exactly as printed; no constant tuning.

#include <cmath>
#include <stdexcept>
#include <string>

#include "logbandit/logistic.hpp"

namespace logb {

struct ProblemParams {
  int d;         // dimension
  double S;      // norm bound on theta*
  double delta;  // failure level in (0, 1]
  double kappa;  // 1 / dsigmoid(S), always derived from S

  ProblemParams(int dim, double norm_bound, double failure_level)
      : d(dim), S(norm_bound), delta(failure_level), kappa(kappa_of(norm_bound)) {
    if (d < 1) throw std::invalid_argument("ProblemParams: d must be >= 1");
    if (!(S > 0.0)) throw std::invalid_argument("ProblemParams: S must be positive");
    if (!(delta > 0.0 && delta <= 1.0))
      throw std::invalid_argument("ProblemParams: delta must be in (0,1]");
  }
};

enum class ScheduleKind { kLambda, kGamma, kBeta, kNu, kSigma, kEta };

ScheduleKind schedule_kind_from_string(const std::string& name);

// Evaluations are pure in (t, params); nondecreasing in t, nonincreasing in
// delta. t counts rounds and must be >= 1.
class RadiusSchedule {
 public:
  explicit RadiusSchedule(ProblemParams p) : p_(p) {}

  double lambda(double t) const {
    check(t);
    return p_.d * std::log((4.0 + t / 4.0) / p_.delta);
  }
  double gamma(double t) const {
    const double c = p_.S + 1.5;
    return c * c * lambda(t);
  }
  double beta(double t) const {
    const double c = 2.5 + (p_.S + 1.5) * (p_.S + 1.5) + p_.S;
    return c * c * gamma(t);
  }
  double nu(double t) const {
    check(t);
    return 0.5 + 2.0 * std::log(2.0 * std::sqrt(t / 4.0 + 1.0) / p_.delta);
  }
  double sigma(double t) const {
    check(t);
    return 8.0 * p_.S * p_.S + 6.0 + 4.0 * std::log(t) + 9.0 * nu(t) +
           18.0 * std::exp(1.0) * p_.d * std::log(1.0 + t / (4.0 * p_.d));
  }
  double eta(double t) const {
    check(t);
    const double c = 2.0 + 2.0 * p_.S;
    return 4.0 + 4.0 * std::log(t) + 16.0 * p_.S * p_.S + c * c * nu(t) / 2.0 +
           8.0 * (1.0 + p_.S) * p_.d * std::log(1.0 + t / p_.d);
  }

  double eval(ScheduleKind kind, double t) const;

  const ProblemParams& params() const { return p_; }

 private:
  static void check(double t) {
    if (!(t >= 1.0)) throw std::invalid_argument("RadiusSchedule: t must be >= 1");
  }
  ProblemParams p_;
};

inline double schedule_eval(ScheduleKind kind, double t, const ProblemParams& p) {
  return RadiusSchedule(p).eval(kind, t);
}

}  // namespace logb
