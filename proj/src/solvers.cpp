#include "logbandit/solvers.hpp"

#include <cmath>
#include <stdexcept>

#include "logbandit/logistic.hpp"
#include "logbandit/ops.hpp"

namespace logb {

int pgd_iterations_general(double alpha, double beta, double diam, double eps) {
  if (!(diam > 0.0)) throw std::invalid_argument("pgd_iterations: diam must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("pgd_iterations: eps must be positive");
  if (diam <= eps) return 1;
  const double t = (1.0 + beta / alpha) * std::log(diam / eps);
  return std::max(1, static_cast<int>(std::ceil(t)));
}

int pgd_iterations(double D, double diam, double eps) {
  const double alpha = 1.0 / (1.0 + D / 2.0);
  return pgd_iterations_general(alpha, alpha + 0.25, diam, eps);
}

Eigen::VectorXd solve_prox(const ProxProblem& p) {
  if (p.w == nullptr || p.constraint == nullptr)
    throw std::invalid_argument("solve_prox: missing W or constraint");
  if (p.terms.empty() || p.terms.size() > 2)
    throw std::invalid_argument("solve_prox: expected 1 or 2 loss terms");
  if (!(p.eta > 0.0 && p.eta <= 0.5))
    throw std::invalid_argument("solve_prox: eta must lie in (0, 1/2]");
  for (const auto& t : p.terms)
    if (t.label != 0 && t.label != 1)
      throw std::invalid_argument("solve_prox: labels must be 0 or 1");

  const int d = p.w->dim();
  const Eigen::MatrixXd& l = p.w->cholesky_lower();
  const double eps = std::max(p.eps, kProxEpsFloor);

  // Whitened variable z = L^T theta: the quadratic becomes eta||z - z0||^2,
  // so the Hessian sits in [2 eta, 2 eta + |terms|/4].
  const double alpha = 2.0 * p.eta;
  const double beta = alpha + 0.25 * static_cast<double>(p.terms.size());

  // The convergence bound needs the feasible set's diameter in z-space;
  // ||L^T u|| <= sqrt(lambda_max(W)) ||u|| gives a sound upper bound.
  const double diam_theta = p.constraint->euclidean_diam_bound();
  const double diam_z = std::sqrt(p.w->lambda_max_bound()) * diam_theta;
  const int iters = pgd_iterations_general(alpha, beta, diam_z, eps);

  // Transformed constraint: {z : L^{-T} z in C} is again an ellipsoid (or an
  // intersection of two).
  std::vector<EllipsoidProjector> projs;
  switch (p.constraint->kind()) {
    case ConstraintSet::Kind::kBall: {
      const double s = p.constraint->ball_radius();
      projs.emplace_back(Eigen::VectorXd::Zero(d), p.w->inverse(), s * s);
      break;
    }
    case ConstraintSet::Kind::kEllipsoid:
    case ConstraintSet::Kind::kIntersection: {
      const Ellipsoid& e = p.constraint->ellipsoid_part();
      // shape_z = L^{-1} M L^{-T}
      Eigen::MatrixXd a = l.triangularView<Eigen::Lower>().solve(e.shape.dense());
      a = l.triangularView<Eigen::Lower>().solve(a.transpose()).transpose().eval();
      a = 0.5 * (a + a.transpose()).eval();
      projs.emplace_back(l.transpose() * e.center, a, e.radius_sq);
      if (p.constraint->kind() == ConstraintSet::Kind::kIntersection) {
        const double s = p.constraint->ball_radius();
        projs.emplace_back(Eigen::VectorXd::Zero(d), p.w->inverse(), s * s);
      }
      break;
    }
  }

  auto project_z = [&](const Eigen::VectorXd& z) -> Eigen::VectorXd {
    if (projs.size() == 1) return projs[0].project(z);
    auto p1 = [&](const Eigen::VectorXd& v) { return projs[0].project(v); };
    auto p2 = [&](const Eigen::VectorXd& v) { return projs[1].project(v); };
    return dykstra_project(z, p1, p2);
  };

  // Whitened loss directions a~ = L^{-1} a.
  std::vector<Eigen::VectorXd> dirs;
  dirs.reserve(p.terms.size());
  for (const auto& t : p.terms)
    dirs.push_back(l.triangularView<Eigen::Lower>().solve(t.arm));

  const Eigen::VectorXd z0 = l.transpose() * p.anchor;
  Eigen::VectorXd z = project_z(z0);  // warm start at the anchor
  const double step = 1.0 / beta;
  for (int it = 0; it < iters; ++it) {
    ops::add(1);
    Eigen::VectorXd g = alpha * (z - z0);
    for (std::size_t k = 0; k < p.terms.size(); ++k) {
      const double margin = dirs[k].dot(z);
      g.noalias() += (sigmoid(margin) - p.terms[k].label) * dirs[k];
    }
    z = project_z(z - step * g);
  }

  // Back to theta = L^{-T} z.
  return l.transpose().triangularView<Eigen::Upper>().solve(z);
}

Eigen::VectorXd solve_mle(const MleProblem& p) {
  if (!(p.reg > 0.0)) throw std::invalid_argument("solve_mle: reg must be positive");
  const int n = static_cast<int>(p.data.size());
  int d = -1;
  if (p.preconditioner != nullptr) d = p.preconditioner->dim();
  else if (p.init.has_value()) d = static_cast<int>(p.init->size());
  else if (n > 0) d = static_cast<int>(p.data[0].arm.size());
  if (d <= 0) throw std::invalid_argument("solve_mle: cannot infer dimension");

  Eigen::VectorXd theta = p.init.value_or(Eigen::VectorXd::Zero(d));

  if (n == 0 && !p.init.has_value()) return theta;  // pure regularizer

  Eigen::MatrixXd a(n, d);
  Eigen::VectorXd y(n), w(n);
  for (int i = 0; i < n; ++i) {
    if (p.data[i].label != 0 && p.data[i].label != 1)
      throw std::invalid_argument("solve_mle: labels must be 0 or 1");
    a.row(i) = p.data[i].arm;
    y(i) = p.data[i].label;
    w(i) = p.data[i].weight;
  }

  const auto pass_units = static_cast<std::uint64_t>(n / std::max(1, d) + 1);
  auto objective = [&](const Eigen::VectorXd& th) {
    ops::add(pass_units);
    double v = p.reg * th.squaredNorm();
    if (n > 0) {
      const Eigen::ArrayXd s = (a * th).array();
      // logloss(x, y) = softplus((1-2y) x)
      const Eigen::ArrayXd m = (1.0 - 2.0 * y.array()) * s;
      v += (w.array() * (m.max(0.0) + (-m.abs()).exp().log1p())).sum();
    }
    return v;
  };
  auto gradient = [&](const Eigen::VectorXd& th) {
    ops::add(pass_units);
    Eigen::VectorXd g = 2.0 * p.reg * th;
    if (n > 0) {
      const Eigen::ArrayXd s = (a * th).array();
      const Eigen::ArrayXd mu = 1.0 / (1.0 + (-s).exp());
      g.noalias() += a.transpose() * (w.array() * (mu - y.array())).matrix();
    }
    return g;
  };

  const double grad_tol = p.eps * p.reg;
  double f = objective(theta);
  constexpr int kMaxIter = 100000;
  for (int it = 0; it < kMaxIter; ++it) {
    const Eigen::VectorXd g = gradient(theta);
    if (g.norm() <= grad_tol) break;
    const Eigen::VectorXd dir =
        (p.preconditioner != nullptr) ? p.preconditioner->solve(g) : g;
    const double slope = g.dot(dir);
    double s = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      const Eigen::VectorXd trial = theta - s * dir;
      const double ft = objective(trial);
      if (ft <= f - 1e-4 * s * slope) {
        theta = trial;
        f = ft;
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) break;  // step underflow: at numerical stationarity
  }
  return theta;
}

}  // namespace logb
