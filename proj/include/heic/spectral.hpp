#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "heic/symmetric_matrix.hpp"

namespace heic {

/// Eigenvalues in decreasing order, with matching orthonormal eigenvectors
/// (column i pairs with value i) when they were requested.
class SortedSpectrum {
 public:
  SortedSpectrum() = default;
  /// Sorts raw solver output. `vectors` may be empty (values-only spectrum);
  /// otherwise it must have one column per value. Ties keep solver order.
  SortedSpectrum(Eigen::VectorXd raw_values, Eigen::MatrixXd raw_vectors);
  explicit SortedSpectrum(std::span<const double> values);

  Eigen::Index size() const noexcept { return values_.size(); }
  double value(Eigen::Index i) const { return values_(i); }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  bool has_vectors() const noexcept { return vectors_.cols() == values_.size() && vectors_.size() > 0; }
  const Eigen::MatrixXd& vectors() const noexcept { return vectors_; }
  /// source_order()[i] is the raw solver index of sorted position i.
  const std::vector<Eigen::Index>& source_order() const noexcept { return source_order_; }

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
  std::vector<Eigen::Index> source_order_;
};

/// Full dense eigendecomposition. Eigenvector signs are unspecified.
/// Throws NumericError if the solver does not converge.
SortedSpectrum symmetric_eig(const SymmetricMatrix& m);

/// Eigenvalues only, for callers that never touch eigenvectors.
SortedSpectrum symmetric_eigenvalues(const SymmetricMatrix& m);

/// Number of decompositions performed by this process so far.
std::uint64_t eigensolver_calls();

/// T = A / n.
SymmetricMatrix normalize_adjacency(const SymmetricMatrix& adjacency);

/// Minimal L2 matching distance between two zero-padded sequences, computed
/// by sorting both in decreasing order.
double delta_2(std::span<const double> a, std::span<const double> b);

}  // namespace heic
