#pragma once
// Symmetric positive-definite matrix with a co-maintained lower Cholesky
// factor and dense inverse. All mutations are PSD rank-one additions applied
// in O(d^2): the factor via the standard Givens-style update, the inverse via
// Sherman-Morrison. Every kRefactorPeriod updates both are rebuilt from the
// dense matrix to bound drift over long horizons.

#include <Eigen/Dense>
#include <cstdint>

namespace logb {

class SpdMatrix {
 public:
  explicit SpdMatrix(int dim, double diag = 1.0);      // diag * I, diag > 0
  explicit SpdMatrix(const Eigen::MatrixXd& m);        // full factorization

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& dense() const { return m_; }
  const Eigen::MatrixXd& cholesky_lower() const { return l_; }
  const Eigen::MatrixXd& inverse() const { return inv_; }

  // A += w v v^T with w >= 0; w = 0 leaves the value untouched bit-for-bit.
  void rank1_update(const Eigen::VectorXd& v, double w);

  double mahalanobis_sq(const Eigen::VectorXd& x) const;  // x^T A x
  double inv_norm_sq(const Eigen::VectorXd& x) const;     // x^T A^{-1} x via L
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;  // A^{-1} b via L
  double log_det() const;

  // Smallest eigenvalue by inverse power iteration on the factor.
  double lambda_min() const;
  // Cheap upper bound on the largest eigenvalue (infinity norm).
  double lambda_max_bound() const;

  std::uint64_t update_count() const { return updates_; }

  static constexpr std::uint64_t kRefactorPeriod = 10000;

 private:
  void refactor();

  Eigen::MatrixXd m_, l_, inv_;
  std::uint64_t updates_ = 0;
};

}  // namespace logb
