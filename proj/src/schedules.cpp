#include "logbandit/schedules.hpp"

namespace logb {

ScheduleKind schedule_kind_from_string(const std::string& name) {
  if (name == "lambda") return ScheduleKind::kLambda;
  if (name == "gamma") return ScheduleKind::kGamma;
  if (name == "beta") return ScheduleKind::kBeta;
  if (name == "nu") return ScheduleKind::kNu;
  if (name == "sigma") return ScheduleKind::kSigma;
  if (name == "eta") return ScheduleKind::kEta;
  throw std::invalid_argument("unknown schedule kind: " + name);
}

double RadiusSchedule::eval(ScheduleKind kind, double t) const {
  switch (kind) {
    case ScheduleKind::kLambda: return lambda(t);
    case ScheduleKind::kGamma: return gamma(t);
    case ScheduleKind::kBeta: return beta(t);
    case ScheduleKind::kNu: return nu(t);
    case ScheduleKind::kSigma: return sigma(t);
    case ScheduleKind::kEta: return eta(t);
  }
  throw std::logic_error("unreachable schedule kind");
}

}  // namespace logb
