#include "heic/symmetric_matrix.hpp"

#include "heic/errors.hpp"
#include "heic/kernels.hpp"

namespace heic {

SymmetricMatrix::SymmetricMatrix(Eigen::Index order) {
  if (order < 0) throw ValidationError("matrix order must be non-negative");
  m_ = Eigen::MatrixXd::Zero(order, order);
}

SymmetricMatrix SymmetricMatrix::from_dense(Eigen::MatrixXd m) {
  if (m.rows() != m.cols()) throw ValidationError("symmetric matrix must be square");
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < m.rows(); ++i) {
      if (m(i, j) != m(j, i)) throw ValidationError("matrix is not symmetric");
    }
  }
  SymmetricMatrix out;
  out.m_ = std::move(m);
  return out;
}

SymmetricMatrix SymmetricMatrix::from_upper(Eigen::MatrixXd m) {
  if (m.rows() != m.cols()) throw ValidationError("symmetric matrix must be square");
  m.triangularView<Eigen::StrictlyLower>() = m.transpose();
  SymmetricMatrix out;
  out.m_ = std::move(m);
  return out;
}

SymmetricMatrix SymmetricMatrix::scaled(double c) const {
  SymmetricMatrix out = *this;
  simd::kernels().scale(out.m_.data(), c, static_cast<std::size_t>(out.m_.size()));
  return out;
}

}  // namespace heic
