#pragma once

#include <cstddef>
#include <vector>

#include "liftspec/errors.hpp"

namespace liftspec {

// Dense row-major matrix, not necessarily symmetric. Used for permutation
// blocks, eigenvector columns and Markov transition matrices; spectral
// computations go through SymmetricMatrix instead.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  double& operator()(int i, int j) noexcept {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }
  double operator()(int i, int j) const noexcept {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<double>& data() const noexcept { return a_; }

  Matrix transposed() const;

  bool operator==(const Matrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

Matrix matmul(const Matrix& a, const Matrix& b);

// Dense real symmetric matrix with full row-major storage. Symmetry is a
// class invariant: every write path either writes both triangles or
// symmetrizes, so downstream spectral code never sees asymmetry.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(int dim);

  // Builds from dim*dim row-major entries, symmetrizing as (M + M^T) / 2.
  SymmetricMatrix(int dim, const std::vector<double>& entries);

  int dim() const noexcept { return dim_; }

  double operator()(int i, int j) const noexcept {
    return a_[static_cast<std::size_t>(i) * dim_ + j];
  }

  // Writes entries (i, j) and (j, i).
  void set(int i, int j, double v) noexcept {
    a_[static_cast<std::size_t>(i) * dim_ + j] = v;
    a_[static_cast<std::size_t>(j) * dim_ + i] = v;
  }

  const std::vector<double>& data() const noexcept { return a_; }

  double trace() const noexcept;
  double frobenius_norm() const noexcept;

  bool operator==(const SymmetricMatrix&) const = default;

 private:
  int dim_ = 0;
  std::vector<double> a_;
};

SymmetricMatrix identity_matrix(int dim);
SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b);
SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b);

// Eigenvalue multiset of a symmetric matrix, sorted nondecreasing.
struct Spectrum {
  std::vector<double> values;

  int size() const noexcept { return static_cast<int>(values.size()); }
  bool empty() const noexcept { return values.empty(); }
  double min() const;
  double max() const;
  // Largest absolute value; 0 for an empty spectrum.
  double max_abs() const noexcept;

  bool operator==(const Spectrum&) const = default;
};

// All eigenvalues with multiplicity, via Householder tridiagonalization
// followed by implicitly shifted symmetric QL. Throws EigenFailure if any
// eigenvalue fails to converge within 50 sweeps (not observed in practice).
Spectrum sym_eigenvalues(const SymmetricMatrix& m);

// Spectral norm max |lambda|. Computed from the full spectrum up to
// dim 4096; above that, by power iteration on M^2 (relative tolerance
// 1e-9, iteration cap 10 * dim) which converges on the squared spectrum
// regardless of the sign split of the extreme eigenvalues.
double operator_norm(const SymmetricMatrix& m);

// Kronecker product under the index flattening (i, l) -> (i - 1) * k + l,
// the same labelling the lift construction uses.
SymmetricMatrix kron(const SymmetricMatrix& a, const SymmetricMatrix& b);

// Rank-one projector with every entry 1/k: projects onto the constant
// vector. Eigenvalues are 1 (once) and 0 (k - 1 times).
SymmetricMatrix projector_pi(int k);

// Result of removing one sorted multiset from another with tolerance.
struct MultisetDiff {
  // Unconsumed elements of the larger multiset, sorted nondecreasing.
  Spectrum values;
  // True if some element of the smaller multiset found no partner within
  // tolerance. A failure means the containment hypothesis is false (or the
  // tolerance is too tight), never that the diff is partially valid.
  bool match_failure = false;
};

// Greedy multiset difference: walks the smaller sorted list in order; each
// element consumes the nearest unconsumed element of the larger list within
// tol, ties broken toward the smaller index. pre: both inputs sorted,
// small.size() <= big.size(), tol >= 0.
MultisetDiff multiset_diff(const Spectrum& big, const Spectrum& small, double tol);

// Default matching tolerance for spectrum containment checks, scaled by the
// operator norm of the matrix the big spectrum came from.
inline double spectrum_match_tol(double big_norm) noexcept {
  return 1e-7 * (big_norm > 1.0 ? big_norm : 1.0);
}

namespace detail {

// Full eigensystem: vectors.col(j) is a unit eigenvector for values[j].
// Columns are orthonormal. Slower than sym_eigenvalues; meant for tests,
// diagnostics and small systems.
struct EigenSystem {
  Spectrum values;
  Matrix vectors;
};

EigenSystem sym_eigensystem(const SymmetricMatrix& m);

// Power iteration on M^2 estimating max |lambda|. Exposed for direct
// testing of the large-dimension branch of operator_norm.
double power_operator_norm(const SymmetricMatrix& m, double rel_tol,
                           long long max_iters);

}  // namespace detail

}  // namespace liftspec
