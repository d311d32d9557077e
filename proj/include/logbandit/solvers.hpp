#pragma once
// The convex programs the learners delegate to: the per-round proximal
// logistic program (one loss term, or the antipodal two-term variant) solved
// by preconditioned projected gradient descent, and the batch regularized
// logistic MLE solved by preconditioned gradient descent.

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "logbandit/ellipsoid.hpp"
#include "logbandit/spd_matrix.hpp"

namespace logb {

struct ProxTerm {
  Eigen::VectorXd arm;
  int label;  // 0 or 1
};

struct ProxProblem {
  const SpdMatrix* w = nullptr;          // quadratic metric W
  Eigen::VectorXd anchor;                // proximal center theta_t
  double eta = 0.25;                     // 1/(2+D), in (0, 1/2]
  std::vector<ProxTerm> terms;           // length 1 or 2
  const ConstraintSet* constraint = nullptr;
  double eps = 1e-8;                     // accuracy target on ||theta' - theta*||
};

// Iteration count ceil((9/4 + D/8) log(diam/eps)), floored at 1; returns 1
// when diam <= eps (any feasible point is already accurate enough).
int pgd_iterations(double D, double diam, double eps);

// Generalization to an explicit strong-convexity/smoothness pair:
// ceil((1 + beta/alpha) log(diam/eps)). With one loss term and
// alpha = (1+D/2)^{-1}, beta = alpha + 1/4 this reduces to pgd_iterations.
int pgd_iterations_general(double alpha, double beta, double diam, double eps);

// Minimizes eta||theta - anchor||_W^2 + sum_i logloss(arm_i^T theta, r_i)
// over the constraint set to accuracy eps (Euclidean distance to the exact
// minimizer). Works in the whitened variable z = L^T theta where the
// quadratic is isotropic; projections stay ellipsoidal under the map.
Eigen::VectorXd solve_prox(const ProxProblem& p);

// Floor applied to requested prox accuracies.
inline constexpr double kProxEpsFloor = 1e-12;

struct MleObservation {
  Eigen::VectorXd arm;
  int label;
  double weight = 1.0;  // multiplicity of this row
};

struct MleProblem {
  std::vector<MleObservation> data;
  double reg = 1.0;                        // coefficient of ||theta||^2
  const SpdMatrix* preconditioner = nullptr;  // V-type metric; identity if null
  double eps = 1e-8;                       // stop when ||grad|| <= eps * reg
  std::optional<Eigen::VectorXd> init;     // warm start (default 0)
};

// Unconstrained minimizer of sum_i w_i logloss(arm_i^T theta, r_i)
// + reg ||theta||^2 by preconditioned gradient descent with Armijo
// backtracking.
Eigen::VectorXd solve_mle(const MleProblem& p);

}  // namespace logb
