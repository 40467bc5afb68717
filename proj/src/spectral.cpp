#include "heic/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include <lapacke.h>

#include "heic/errors.hpp"
#include "heic/kernels.hpp"

namespace heic {
namespace {

std::atomic<std::uint64_t> g_solver_calls{0};

SortedSpectrum decompose(const SymmetricMatrix& m, bool want_vectors) {
  const Eigen::Index n = m.order();
  if (n == 0) return SortedSpectrum(Eigen::VectorXd(), Eigen::MatrixXd());
  ++g_solver_calls;

  Eigen::MatrixXd work = m.dense();
  Eigen::VectorXd values(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'L',
                                         static_cast<lapack_int>(n), work.data(),
                                         static_cast<lapack_int>(n), values.data());
  if (info != 0) {
    throw NumericError("symmetric eigensolver failed (dsyevd info=" + std::to_string(info) + ")");
  }
  if (!values.allFinite()) throw NumericError("symmetric eigensolver returned non-finite eigenvalues");
  return SortedSpectrum(std::move(values), want_vectors ? std::move(work) : Eigen::MatrixXd());
}

}  // namespace

SortedSpectrum::SortedSpectrum(Eigen::VectorXd raw_values, Eigen::MatrixXd raw_vectors) {
  const Eigen::Index n = raw_values.size();
  if (raw_vectors.size() > 0 && (raw_vectors.cols() != n || raw_vectors.rows() != n)) {
    throw ValidationError("eigenvector matrix does not match the eigenvalue count");
  }
  source_order_.resize(static_cast<std::size_t>(n));
  std::iota(source_order_.begin(), source_order_.end(), Eigen::Index{0});
  std::stable_sort(source_order_.begin(), source_order_.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return raw_values(a) > raw_values(b); });
  values_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) values_(i) = raw_values(source_order_[i]);
  if (raw_vectors.size() > 0) {
    vectors_.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) vectors_.col(i) = raw_vectors.col(source_order_[i]);
  }
}

SortedSpectrum::SortedSpectrum(std::span<const double> values)
    : SortedSpectrum(Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())),
                     Eigen::MatrixXd()) {}

SortedSpectrum symmetric_eig(const SymmetricMatrix& m) { return decompose(m, true); }

SortedSpectrum symmetric_eigenvalues(const SymmetricMatrix& m) { return decompose(m, false); }

std::uint64_t eigensolver_calls() { return g_solver_calls.load(); }

SymmetricMatrix normalize_adjacency(const SymmetricMatrix& adjacency) {
  const Eigen::Index n = adjacency.order();
  if (n < 1) throw ValidationError("cannot normalize an empty matrix");
  return adjacency.scaled(1.0 / static_cast<double>(n));
}

double delta_2(std::span<const double> a, std::span<const double> b) {
  // |a| + |b| slots suffice: an optimal matching never pairs more entries than that with padding.
  const std::size_t len = a.size() + b.size();
  std::vector<double> x(len, 0.0);
  std::vector<double> y(len, 0.0);
  std::copy(a.begin(), a.end(), x.begin());
  std::copy(b.begin(), b.end(), y.begin());
  std::sort(x.begin(), x.end(), std::greater<>());
  std::sort(y.begin(), y.end(), std::greater<>());
  return std::sqrt(simd::kernels().squared_distance(x.data(), y.data(), len));
}

}  // namespace heic
