#include "logbandit/spd_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "logbandit/ops.hpp"

namespace logb {

SpdMatrix::SpdMatrix(int dim, double diag) {
  if (dim < 1) throw std::invalid_argument("SpdMatrix: dim must be >= 1");
  if (!(diag > 0.0)) throw std::invalid_argument("SpdMatrix: diagonal must be positive");
  m_ = diag * Eigen::MatrixXd::Identity(dim, dim);
  l_ = std::sqrt(diag) * Eigen::MatrixXd::Identity(dim, dim);
  inv_ = (1.0 / diag) * Eigen::MatrixXd::Identity(dim, dim);
}

SpdMatrix::SpdMatrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("SpdMatrix: matrix must be square");
  m_ = 0.5 * (m + m.transpose());
  refactor();
}

void SpdMatrix::refactor() {
  Eigen::LLT<Eigen::MatrixXd> llt(m_);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("SpdMatrix: matrix is not positive definite");
  l_ = llt.matrixL();
  inv_ = llt.solve(Eigen::MatrixXd::Identity(dim(), dim()));
  inv_ = 0.5 * (inv_ + inv_.transpose()).eval();
}

void SpdMatrix::rank1_update(const Eigen::VectorXd& v, double w) {
  if (v.size() != dim()) throw std::invalid_argument("rank1_update: dimension mismatch");
  if (w < 0.0) throw std::invalid_argument("rank1_update: downdates are not supported");
  if (w == 0.0) return;
  ops::add(1);

  const int d = dim();
  m_.selfadjointView<Eigen::Lower>().rankUpdate(v, w);
  m_ = m_.selfadjointView<Eigen::Lower>();

  // Givens-style Cholesky update of L with u = sqrt(w) v.
  Eigen::VectorXd u = std::sqrt(w) * v;
  for (int i = 0; i < d; ++i) {
    const double lii = l_(i, i);
    const double r = std::hypot(lii, u(i));
    const double c = r / lii;
    const double s = u(i) / lii;
    l_(i, i) = r;
    for (int j = i + 1; j < d; ++j) {
      l_(j, i) = (l_(j, i) + s * u(j)) / c;
      u(j) = c * u(j) - s * l_(j, i);
    }
  }

  // Sherman-Morrison on the inverse.
  const Eigen::VectorXd iv = inv_ * v;
  const double denom = 1.0 + w * v.dot(iv);
  inv_.noalias() -= (w / denom) * iv * iv.transpose();
  inv_ = 0.5 * (inv_ + inv_.transpose()).eval();

  ++updates_;
  if (updates_ % kRefactorPeriod == 0) refactor();
}

double SpdMatrix::mahalanobis_sq(const Eigen::VectorXd& x) const {
  if (x.size() != dim()) throw std::invalid_argument("mahalanobis_sq: dimension mismatch");
  ops::add(1);
  return x.dot(m_ * x);
}

double SpdMatrix::inv_norm_sq(const Eigen::VectorXd& x) const {
  if (x.size() != dim()) throw std::invalid_argument("inv_norm_sq: dimension mismatch");
  ops::add(1);
  // ||x||_{A^-1}^2 = ||L^-1 x||^2, one triangular solve against the factor.
  const Eigen::VectorXd z = l_.triangularView<Eigen::Lower>().solve(x);
  return z.squaredNorm();
}

Eigen::VectorXd SpdMatrix::solve(const Eigen::VectorXd& b) const {
  if (b.size() != dim()) throw std::invalid_argument("solve: dimension mismatch");
  ops::add(1);
  Eigen::VectorXd y = l_.triangularView<Eigen::Lower>().solve(b);
  return l_.transpose().triangularView<Eigen::Upper>().solve(y);
}

double SpdMatrix::log_det() const {
  return 2.0 * l_.diagonal().array().log().sum();
}

double SpdMatrix::lambda_min() const {
  const int d = dim();
  if (d == 1) return m_(0, 0);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(d).normalized();
  // Tilt the start so it is never orthogonal to the target eigenvector.
  for (int i = 0; i < d; ++i) v(i) += 1e-3 * static_cast<double>(i + 1) / d;
  v.normalize();
  double rayleigh = v.dot(m_ * v);
  for (int it = 0; it < 1000; ++it) {
    Eigen::VectorXd y = l_.triangularView<Eigen::Lower>().solve(v);
    y = l_.transpose().triangularView<Eigen::Upper>().solve(y);
    y.normalize();
    const double next = y.dot(m_ * y);
    v = y;
    if (std::fabs(next - rayleigh) <= 1e-14 * std::fabs(next) && it >= 20) {
      rayleigh = next;
      break;
    }
    rayleigh = next;
  }
  return rayleigh;
}

double SpdMatrix::lambda_max_bound() const {
  return m_.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace logb
