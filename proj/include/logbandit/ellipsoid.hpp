#pragma once
// Ellipsoids {theta : ||theta - c||_M^2 <= r}, the constraint sets learners
// optimize over (ball, ellipsoid, or their intersection), Euclidean
// projections via the one-dimensional dual with safeguarded Newton/bisection,
// and diameter bounds under an arm set.

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "logbandit/spd_matrix.hpp"

namespace logb {

struct Ellipsoid {
  Eigen::VectorXd center;
  SpdMatrix shape;      // M
  double radius_sq;     // r

  Ellipsoid(Eigen::VectorXd c, SpdMatrix m, double r);

  int dim() const { return static_cast<int>(center.size()); }
  double quad_form(const Eigen::VectorXd& x) const;  // ||x - c||_M^2
  bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;
};

// Projection onto a fixed ellipsoid. Construction pays one eigendecomposition
// of the shape matrix; each call then solves the 1-D dual with O(d) work per
// Newton step plus the O(d^2) basis transforms.
class EllipsoidProjector {
 public:
  EllipsoidProjector(Eigen::VectorXd center, const Eigen::MatrixXd& shape, double radius_sq);
  explicit EllipsoidProjector(const Ellipsoid& e);

  Eigen::VectorXd project(const Eigen::VectorXd& x) const;

  static constexpr int kMaxIter = 1000;

 private:
  Eigen::VectorXd center_;
  Eigen::MatrixXd q_;    // eigenvectors of the shape
  Eigen::VectorXd eig_;  // eigenvalues, ascending
  double r_;
};

// Euclidean projection of x onto E. Interior points are returned unchanged;
// otherwise y = c + (I + lambda* M)^{-1}(x - c) with lambda* solving the dual
// to |quad-form residual| <= 1e-10 * max(1, r).
Eigen::VectorXd project_ellipsoid(const Eigen::VectorXd& x, const Ellipsoid& e);

// argmin_{||y|| <= radius} ||y - x||_M^2 (projection onto a Euclidean ball in
// the M-metric; same dual structure with the roles swapped).
Eigen::VectorXd project_ball_in_metric(const Eigen::VectorXd& x, const Eigen::MatrixXd& m,
                                       double radius);

class ConstraintSet {
 public:
  enum class Kind { kBall, kEllipsoid, kIntersection };

  static ConstraintSet ball(int dim, double radius);
  static ConstraintSet ellipsoid(Ellipsoid e);
  // Ellipsoid intersected with the centered ball; throws if provably empty.
  static ConstraintSet intersection(Ellipsoid e, double ball_radius);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double ball_radius() const { return ball_radius_; }
  const Ellipsoid& ellipsoid_part() const { return *ell_; }

  bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;
  Eigen::VectorXd project(const Eigen::VectorXd& x) const;

  // Upper bound on max_a max_{t1,t2 in set} |a^T(t1 - t2)| over the given
  // finite arm set, or over the unit ball of arms.
  double diam_under_arms(std::span<const Eigen::VectorXd> arms) const;
  double diam_under_unit_ball() const;

  // Upper bound on the Euclidean diameter of the set itself.
  double euclidean_diam_bound() const;

  static constexpr int kDykstraCap = 10000;

 private:
  ConstraintSet(Kind k, int dim) : kind_(k), dim_(dim) {}

  Kind kind_;
  int dim_;
  double ball_radius_ = -1.0;
  std::optional<Ellipsoid> ell_;
  std::optional<EllipsoidProjector> ell_proj_;
};

// Alternating (Dykstra) projection onto the intersection of two sets given
// their projectors; converges to the exact projection for convex sets.
Eigen::VectorXd dykstra_project(
    const Eigen::VectorXd& x,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& p1,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& p2,
    double tol = 1e-10, int cap = 10000);

inline Eigen::VectorXd project_constraint(const Eigen::VectorXd& x, const ConstraintSet& c) {
  return c.project(x);
}

}  // namespace logb
