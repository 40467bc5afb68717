#pragma once

#include <Eigen/Dense>

namespace heic {

/// Dense real symmetric matrix. Symmetry is exact: every constructor either
/// checks it or produces it by mirroring one triangle.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(Eigen::Index order);

  /// Throws ValidationError unless `m` is square and m == m^T bit for bit.
  static SymmetricMatrix from_dense(Eigen::MatrixXd m);
  /// Copies the upper triangle of a square matrix onto its lower triangle.
  static SymmetricMatrix from_upper(Eigen::MatrixXd m);

  Eigen::Index order() const noexcept { return m_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  void set(Eigen::Index i, Eigen::Index j, double value) {
    m_(i, j) = value;
    m_(j, i) = value;
  }

  const Eigen::MatrixXd& dense() const noexcept { return m_; }
  /// Column `j`, which equals row `j`. Contiguous.
  const double* column(Eigen::Index j) const { return m_.data() + j * m_.rows(); }

  SymmetricMatrix scaled(double c) const;
  double frobenius_norm() const { return m_.norm(); }

 private:
  Eigen::MatrixXd m_;
};

}  // namespace heic
