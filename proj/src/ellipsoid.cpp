#include "logbandit/ellipsoid.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "logbandit/ops.hpp"

namespace logb {

namespace {

// Solves sum_i lam_i w_i^2 / (1 + nu lam_i)^2 = r for nu >= 0 given that the
// residual at nu = 0 is positive. Decreasing and convex in nu; safeguarded
// Newton inside a bracket with a guaranteed sign change.
double solve_dual(const Eigen::VectorXd& lam, const Eigen::VectorXd& w, double r,
                  double lam_min, int cap) {
  auto phi = [&](double nu, double* dphi) {
    double value = 0.0, deriv = 0.0;
    for (int i = 0; i < lam.size(); ++i) {
      const double den = 1.0 + nu * lam(i);
      const double t = lam(i) * w(i) * w(i) / (den * den);
      value += t;
      deriv += -2.0 * lam(i) * t / den;
    }
    if (dphi) *dphi = deriv;
    return value;
  };

  const double tol = 1e-10 * std::max(1.0, r);
  double lo = 0.0;
  const double phi0 = phi(0.0, nullptr);
  if (phi0 <= r + tol) return 0.0;
  // Bracket: 1 + hi*lam_min >= sqrt(phi0 / r) forces phi(hi) <= r.
  double hi = (std::sqrt(phi0 / r) - 1.0) / lam_min + 1.0;
  while (phi(hi, nullptr) > r) hi *= 2.0;  // paranoia against rounding

  double nu = 0.0;
  for (int it = 0; it < cap; ++it) {
    double dphi = 0.0;
    const double value = phi(nu, &dphi);
    if (std::fabs(value - r) <= tol) return nu;
    if (value > r) lo = nu; else hi = nu;
    double next = nu - (value - r) / dphi;  // dphi < 0 away from huge nu
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == nu) return nu;
    nu = next;
  }
  throw std::runtime_error("ellipsoid projection: dual solve did not converge");
}

}  // namespace

Ellipsoid::Ellipsoid(Eigen::VectorXd c, SpdMatrix m, double r)
    : center(std::move(c)), shape(std::move(m)), radius_sq(r) {
  if (center.size() != shape.dim())
    throw std::invalid_argument("Ellipsoid: center/shape dimension mismatch");
  if (!(radius_sq > 0.0)) throw std::invalid_argument("Ellipsoid: radius must be positive");
}

double Ellipsoid::quad_form(const Eigen::VectorXd& x) const {
  return shape.mahalanobis_sq(x - center);
}

bool Ellipsoid::contains(const Eigen::VectorXd& x, double tol) const {
  return quad_form(x) <= radius_sq + tol;
}

EllipsoidProjector::EllipsoidProjector(Eigen::VectorXd center, const Eigen::MatrixXd& shape,
                                       double radius_sq)
    : center_(std::move(center)), r_(radius_sq) {
  if (!(r_ > 0.0)) throw std::invalid_argument("EllipsoidProjector: radius must be positive");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(shape);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("EllipsoidProjector: eigendecomposition failed");
  q_ = es.eigenvectors();
  eig_ = es.eigenvalues();
  if (eig_(0) <= 0.0)
    throw std::invalid_argument("EllipsoidProjector: shape must be positive definite");
}

EllipsoidProjector::EllipsoidProjector(const Ellipsoid& e)
    : EllipsoidProjector(e.center, e.shape.dense(), e.radius_sq) {}

Eigen::VectorXd EllipsoidProjector::project(const Eigen::VectorXd& x) const {
  ops::add(1);
  const Eigen::VectorXd w = q_.transpose() * (x - center_);
  const double nu = solve_dual(eig_, w, r_, eig_(0), kMaxIter);
  if (nu == 0.0) return x;
  Eigen::VectorXd y(w.size());
  for (int i = 0; i < w.size(); ++i) y(i) = w(i) / (1.0 + nu * eig_(i));
  return center_ + q_ * y;
}

Eigen::VectorXd project_ellipsoid(const Eigen::VectorXd& x, const Ellipsoid& e) {
  if (e.contains(x)) return x;
  return EllipsoidProjector(e).project(x);
}

Eigen::VectorXd project_ball_in_metric(const Eigen::VectorXd& x, const Eigen::MatrixXd& m,
                                       double radius) {
  if (x.norm() <= radius) return x;
  // Stationarity: M(y - x) + nu y = 0, y(nu) = Q (Lam + nu I)^{-1} Lam Q^T x;
  // find nu with ||y(nu)|| = radius.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("project_ball_in_metric: eigendecomposition failed");
  const Eigen::VectorXd lam = es.eigenvalues();
  if (lam(0) <= 0.0)
    throw std::invalid_argument("project_ball_in_metric: metric must be positive definite");
  const Eigen::VectorXd w = es.eigenvectors().transpose() * x;

  auto norm_sq = [&](double nu) {
    double v = 0.0;
    for (int i = 0; i < w.size(); ++i) {
      const double t = lam(i) * w(i) / (lam(i) + nu);
      v += t * t;
    }
    return v;
  };
  const double target = radius * radius;
  double lo = 0.0;
  double hi = lam(w.size() - 1) * (x.norm() / radius - 1.0) + 1.0;
  while (norm_sq(hi) > target) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (norm_sq(mid) > target) lo = mid; else hi = mid;
  }
  const double nu = 0.5 * (lo + hi);
  Eigen::VectorXd y(w.size());
  for (int i = 0; i < w.size(); ++i) y(i) = lam(i) * w(i) / (lam(i) + nu);
  return es.eigenvectors() * y;
}

ConstraintSet ConstraintSet::ball(int dim, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("ConstraintSet: ball radius must be positive");
  ConstraintSet c(Kind::kBall, dim);
  c.ball_radius_ = radius;
  return c;
}

ConstraintSet ConstraintSet::ellipsoid(Ellipsoid e) {
  ConstraintSet c(Kind::kEllipsoid, e.dim());
  c.ell_proj_.emplace(e);
  c.ell_ = std::move(e);
  return c;
}

ConstraintSet ConstraintSet::intersection(Ellipsoid e, double ball_radius) {
  if (!(ball_radius > 0.0))
    throw std::invalid_argument("ConstraintSet: ball radius must be positive");
  // Exact nonemptiness: the M-metric projection of the ellipsoid center onto
  // the ball must stay within the ellipsoid radius.
  const Eigen::VectorXd p = project_ball_in_metric(e.center, e.shape.dense(), ball_radius);
  const double gap = e.quad_form(p);
  if (gap > e.radius_sq + 1e-9 * std::max(1.0, e.radius_sq))
    throw std::invalid_argument("ConstraintSet: intersection is empty");
  ConstraintSet c(Kind::kIntersection, e.dim());
  c.ball_radius_ = ball_radius;
  c.ell_proj_.emplace(e);
  c.ell_ = std::move(e);
  return c;
}

bool ConstraintSet::contains(const Eigen::VectorXd& x, double tol) const {
  switch (kind_) {
    case Kind::kBall:
      return x.squaredNorm() <= ball_radius_ * ball_radius_ + tol;
    case Kind::kEllipsoid:
      return ell_->contains(x, tol);
    case Kind::kIntersection:
      return ell_->contains(x, tol) &&
             x.squaredNorm() <= ball_radius_ * ball_radius_ + tol;
  }
  return false;
}

Eigen::VectorXd dykstra_project(
    const Eigen::VectorXd& x0,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& p1,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& p2,
    double tol, int cap) {
  Eigen::VectorXd x = x0;
  Eigen::VectorXd p = Eigen::VectorXd::Zero(x.size());
  Eigen::VectorXd q = Eigen::VectorXd::Zero(x.size());
  for (int it = 0; it < cap; ++it) {
    const Eigen::VectorXd y = p1(x + p);
    p = x + p - y;
    const Eigen::VectorXd xn = p2(y + q);
    q = y + q - xn;
    if ((xn - x).norm() < tol) return xn;
    x = xn;
  }
  throw std::runtime_error("dykstra_project: iteration cap exceeded");
}

Eigen::VectorXd ConstraintSet::project(const Eigen::VectorXd& x) const {
  switch (kind_) {
    case Kind::kBall: {
      const double n = x.norm();
      if (n <= ball_radius_) return x;
      return x * (ball_radius_ / n);
    }
    case Kind::kEllipsoid: {
      if (ell_->contains(x)) return x;
      return ell_proj_->project(x);
    }
    case Kind::kIntersection: {
      if (contains(x)) return x;
      const double radius = ball_radius_;
      auto pe = [this](const Eigen::VectorXd& z) { return ell_proj_->project(z); };
      auto pb = [radius](const Eigen::VectorXd& z) {
        const double n = z.norm();
        return n <= radius ? z : Eigen::VectorXd(z * (radius / n));
      };
      Eigen::VectorXd y = dykstra_project(x, pe, pb, 1e-10, kDykstraCap);
      if (!contains(y, 1e-8 * std::max(1.0, ell_->radius_sq)))
        throw std::runtime_error("project_constraint: result violates the constraints");
      return y;
    }
  }
  throw std::logic_error("unreachable constraint kind");
}

double ConstraintSet::diam_under_arms(std::span<const Eigen::VectorXd> arms) const {
  if (arms.empty()) throw std::invalid_argument("diam_under_arms: empty arm list");
  switch (kind_) {
    case Kind::kBall: {
      double best = 0.0;
      for (const auto& a : arms) best = std::max(best, 2.0 * ball_radius_ * a.norm());
      return best;
    }
    case Kind::kEllipsoid: {
      double best = 0.0;
      for (const auto& a : arms)
        best = std::max(best, 2.0 * std::sqrt(ell_->radius_sq * ell_->shape.inv_norm_sq(a)));
      return best;
    }
    case Kind::kIntersection: {
      double eb = 0.0, bb = 0.0;
      for (const auto& a : arms) {
        eb = std::max(eb, 2.0 * std::sqrt(ell_->radius_sq * ell_->shape.inv_norm_sq(a)));
        bb = std::max(bb, 2.0 * ball_radius_ * a.norm());
      }
      return std::min(eb, bb);
    }
  }
  throw std::logic_error("unreachable constraint kind");
}

double ConstraintSet::diam_under_unit_ball() const {
  switch (kind_) {
    case Kind::kBall:
      return 2.0 * ball_radius_;
    case Kind::kEllipsoid:
      return 2.0 * std::sqrt(ell_->radius_sq / ell_->shape.lambda_min());
    case Kind::kIntersection:
      return std::min(2.0 * std::sqrt(ell_->radius_sq / ell_->shape.lambda_min()),
                      2.0 * ball_radius_);
  }
  throw std::logic_error("unreachable constraint kind");
}

double ConstraintSet::euclidean_diam_bound() const {
  // Same bounds; the unit ball of arms dominates every unit arm.
  return diam_under_unit_ball();
}

}  // namespace logb
