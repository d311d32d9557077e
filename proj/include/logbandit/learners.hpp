#pragma once
// The bandit algorithms as explicit state machines: the warm-up procedure,
// the per-round proximal learner (shared by the OFU and TS planners), the
// adaptive warm-up-free variant, and the two baselines (per-round batch MLE
// with UCB planning, and an online-Newton-style learner with kappa-scaled
// curvature).

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "logbandit/ellipsoid.hpp"
#include "logbandit/rng.hpp"
#include "logbandit/schedules.hpp"
#include "logbandit/solvers.hpp"
#include "logbandit/spd_matrix.hpp"

namespace logb {

// Accuracy rule for the per-round proximal solves: eps_t = max(1/t, floor).
struct EpsRule {
  double floor = 1e-12;
  double at(long t) const { return std::max(1.0 / static_cast<double>(t), floor); }
};

// ---------------------------------------------------------------------------
// Core online learner state.

struct EcologState {
  Eigen::VectorXd theta;     // current estimate theta_t
  SpdMatrix w;               // metric W_t, starts at I
  ConstraintSet constraint;  // admissible set Theta
  double diameter;           // D, upper bound on diam_A(Theta)
  long t;                    // round index (global)
  RadiusSchedule schedule;
  EpsRule eps_rule;

  EcologState(Eigen::VectorXd theta0, ConstraintSet c, double d_bound, long t0,
              RadiusSchedule sched);
};

// One proximal update: theta_{t+1} solves the anchored program to accuracy
// eps_t, then W gains dsigmoid(arm . theta_{t+1}) arm arm^T and t increments.
void ecolog_step(EcologState& state, const Eigen::VectorXd& arm, int reward);

// Shared tail of ecolog_step for callers that already solved the program.
void apply_ecolog_update(EcologState& state, const Eigen::VectorXd& arm,
                         const Eigen::VectorXd& theta_next);

struct OfuChoice {
  int index;
  double value;
};

// Exact enumeration argmax of a . theta + sqrt(radius) ||a||_{W^-1};
// ties break to the lowest index.
OfuChoice ofu_select(const EcologState& state, std::span<const Eigen::VectorXd> arms,
                     double radius);

// Same rule over an explicit ellipsoid (center, shape, radius_sq), used for
// the first post-warm-up round where the confidence set is the warm-up set.
OfuChoice ofu_select_ellipsoid(const Eigen::VectorXd& center, const SpdMatrix& shape,
                               double radius_sq, std::span<const Eigen::VectorXd> arms);

// Rejection-sampled randomized selection: theta~ = theta + sqrt(radius) *
// L^{-T} eta with eta standard normal, redrawn until theta~ lies in the
// constraint set (cap 10^4), then the arm oracle is applied.
Eigen::VectorXd ts_select(const EcologState& state,
                          const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& arm_oracle,
                          RngStream& rng, double radius);

inline constexpr int kTsRejectionCap = 10000;

// ---------------------------------------------------------------------------
// Warm-up (forced exploration).

struct WarmupConfig {
  long tau = 0;
  ProblemParams params;
  double mle_eps = 1e-8;
};

// Default warm-up length: ceil(16 kappa d beta_T(delta) log(1+T)).
long default_warmup_length(const ProblemParams& params, long horizon);

// Plays the most uncertain arm each round and accumulates the design matrix
// V += a a^T / kappa on top of lambda_tau(delta) I. For finite arm sets the
// observations are aggregated by (arm, label) so the final fit stays cheap
// for very long warm-ups.
class WarmupMachine {
 public:
  WarmupMachine(WarmupConfig cfg, int num_finite_arms);

  bool done() const { return t_ >= cfg_.tau; }
  long rounds_played() const { return t_; }
  const SpdMatrix& design() const { return v_; }

  // Max-uncertainty arm among the candidates; ties break to lowest index.
  int select(std::span<const Eigen::VectorXd> arms) const;
  // Unit-ball variant: the direction of smallest design eigenvalue.
  Eigen::VectorXd select_unit_ball() const;

  void observe(const Eigen::VectorXd& arm, int arm_index, int reward);

  // Regularized MLE fit and the admissible set
  // {theta : ||theta - theta_hat||_{V_tau}^2 <= beta_tau(delta)}.
  struct Result {
    Ellipsoid theta_set;
    Eigen::VectorXd theta_hat;
  };
  Result finish() const;

 private:
  WarmupConfig cfg_;
  RadiusSchedule schedule_;
  SpdMatrix v_;
  long t_ = 0;
  // Finite arm sets: counts per (arm index, label); otherwise raw rows.
  std::vector<Eigen::VectorXd> arm_snapshot_;
  std::vector<std::array<double, 2>> counts_;
  std::vector<MleObservation> raw_;
};

// Drives a full warm-up against a pull oracle over a fixed finite arm set and
// returns the admissible set. `trace`, when given, receives the played arm
// indexes.
Ellipsoid warmup_run(long tau, std::span<const Eigen::VectorXd> arms,
                     const std::function<int(const Eigen::VectorXd&, long)>& pull,
                     const ProblemParams& params, std::vector<int>* trace = nullptr);

// ---------------------------------------------------------------------------
// Adaptive (warm-up free) learner.

struct AdaState {
  EcologState inner;  // theta/W plus the data-driven constraint Theta_t
  std::vector<std::pair<Eigen::VectorXd, int>> history;  // rejected pairs
  Eigen::VectorXd theta_hat_h;
  std::optional<SpdMatrix> v_h;
  double mle_eps = 1e-8;

  explicit AdaState(const RadiusSchedule& schedule);
};

struct AdaStepInfo {
  bool accepted;
  double sens_bar;   // dsigmoid(arm . theta_bar)
  double sens_u[2];  // dsigmoid(arm . theta^u)
};

// Either feeds the pair to the proximal learner (when the sensitivities at
// the antipodal one-step estimates are comparable) or stores it in the
// rejected history, refits the history MLE, and rebuilds the admissible set
// as {||theta - theta_hat^H||_{V^H}^2 <= beta_t(delta)} intersected with the
// norm ball. The arms view is used to refresh the diameter bound on rebuild.
AdaStepInfo ada_step(AdaState& state, const Eigen::VectorXd& arm, int reward,
                     std::span<const Eigen::VectorXd> arms, bool unit_ball_arms = false);

// ---------------------------------------------------------------------------
// Baselines.

struct BaselineConstants {
  double v_reg = 1.0;     // ridge on the kappa-scaled design matrix
  double mle_reg = 1.0;   // ridge on the per-round batch MLE
  double mle_eps = 1e-6;  // batch MLE accuracy
  double ons_step = 1.0;  // scale on the Newton-style correction
};

// Per-round batch MLE with V_t-preconditioned refits and UCB bonus
// sqrt(kappa lambda_t(delta)) ||a||_{V_t^-1}; per-round cost grows with t.
class GlmUcbState {
 public:
  GlmUcbState(ProblemParams params, BaselineConstants constants = {});

  int select(std::span<const Eigen::VectorXd> arms) const;
  Eigen::VectorXd select_unit_ball(RngStream& rng) const;  // randomized variant
  void observe(const Eigen::VectorXd& arm, int reward);

  const Eigen::VectorXd& estimate() const { return theta_hat_; }
  long round() const { return t_; }
  double bonus_scale() const;

 private:
  ProblemParams params_;
  BaselineConstants c_;
  RadiusSchedule schedule_;
  SpdMatrix v_;
  Eigen::VectorXd theta_hat_;
  std::vector<MleObservation> data_;
  long t_ = 1;
};

// Online Newton-style learner: quadratic surrogate with curvature 1/kappa,
// projection onto the norm ball in the design metric, same UCB bonus.
class OnsState {
 public:
  OnsState(ProblemParams params, BaselineConstants constants = {});

  int select(std::span<const Eigen::VectorXd> arms) const;
  Eigen::VectorXd select_unit_ball(RngStream& rng) const;
  void observe(const Eigen::VectorXd& arm, int reward);

  const Eigen::VectorXd& estimate() const { return theta_; }
  long round() const { return t_; }
  double bonus_scale() const;

 private:
  ProblemParams params_;
  BaselineConstants c_;
  RadiusSchedule schedule_;
  SpdMatrix v_;
  Eigen::VectorXd theta_;
  long t_ = 1;
};

}  // namespace logb
