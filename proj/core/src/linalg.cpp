#include "liftspec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "liftspec/rng.hpp"

namespace liftspec {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw InvalidParams(msg);
}

}  // namespace

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  require(rows >= 0 && cols >= 0, "Matrix: negative dimension");
  a_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "matmul: inner dimensions disagree");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int l = 0; l < a.cols(); ++l) {
      const double ail = a(i, l);
      if (ail == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
    }
  }
  return c;
}

SymmetricMatrix::SymmetricMatrix(int dim) : dim_(dim) {
  require(dim >= 0, "SymmetricMatrix: negative dimension");
  a_.assign(static_cast<std::size_t>(dim) * dim, 0.0);
}

SymmetricMatrix::SymmetricMatrix(int dim, const std::vector<double>& entries)
    : dim_(dim) {
  require(dim >= 0, "SymmetricMatrix: negative dimension");
  require(entries.size() == static_cast<std::size_t>(dim) * dim,
          "SymmetricMatrix: entry count does not match dimension");
  a_ = entries;
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const double v = 0.5 * (a_[static_cast<std::size_t>(i) * dim + j] +
                              a_[static_cast<std::size_t>(j) * dim + i]);
      a_[static_cast<std::size_t>(i) * dim + j] = v;
      a_[static_cast<std::size_t>(j) * dim + i] = v;
    }
  }
}

double SymmetricMatrix::trace() const noexcept {
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double SymmetricMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

SymmetricMatrix identity_matrix(int dim) {
  SymmetricMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  require(a.dim() == b.dim(), "SymmetricMatrix +: dimensions disagree");
  SymmetricMatrix c(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) c.set(i, j, a(i, j) + b(i, j));
  return c;
}

SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  require(a.dim() == b.dim(), "SymmetricMatrix -: dimensions disagree");
  SymmetricMatrix c(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) c.set(i, j, a(i, j) - b(i, j));
  return c;
}

double Spectrum::min() const {
  if (values.empty()) throw InvalidParams("Spectrum::min: empty spectrum");
  return values.front();
}

double Spectrum::max() const {
  if (values.empty()) throw InvalidParams("Spectrum::max: empty spectrum");
  return values.back();
}

double Spectrum::max_abs() const noexcept {
  if (values.empty()) return 0.0;
  return std::max(std::fabs(values.front()), std::fabs(values.back()));
}

namespace {

constexpr int kMaxSweeps = 50;

// Householder reduction to tridiagonal form, eigenvalues only. Reads and
// destroys the lower triangle of the row-major matrix a; writes the
// diagonal to d and the subdiagonal to e[1..n-1]. Column-index loops are
// arranged so every inner pass streams a row of a.
void tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d,
                    std::vector<double>& e) {
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  std::vector<double> p(n, 0.0);
  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      double* ai = &a[static_cast<std::size_t>(i) * n];
      for (int k = 0; k <= l; ++k) scale += std::fabs(ai[k]);
      if (scale == 0.0) {
        e[i] = ai[l];
      } else {
        for (int k = 0; k <= l; ++k) {
          ai[k] /= scale;
          h += ai[k] * ai[k];
        }
        double f = ai[l];
        const double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        ai[l] = f - g;
        std::fill(p.begin(), p.begin() + l + 1, 0.0);
        // p = A u over the lower triangle in one row-order pass.
        for (int j = 0; j <= l; ++j) {
          const double* aj = &a[static_cast<std::size_t>(j) * n];
          const double uj = ai[j];
          double s = aj[j] * uj;
          for (int k = 0; k < j; ++k) {
            s += aj[k] * ai[k];
            p[k] += aj[k] * uj;
          }
          p[j] += s;
        }
        double f2 = 0.0;
        for (int j = 0; j <= l; ++j) {
          p[j] /= h;
          f2 += p[j] * ai[j];
        }
        const double hh = f2 / (h + h);
        for (int j = 0; j <= l; ++j) p[j] -= hh * ai[j];
        // Rank-two update A -= u q^T + q u^T restricted to the lower triangle.
        for (int j = 0; j <= l; ++j) {
          const double fj = ai[j];
          const double qj = p[j];
          double* aj = &a[static_cast<std::size_t>(j) * n];
          for (int k = 0; k <= j; ++k) aj[k] -= fj * p[k] + qj * ai[k];
        }
      }
    } else {
      e[i] = a[static_cast<std::size_t>(i) * n + l];
    }
    d[i] = h;
  }
  d[0] = a[0];
  for (int i = 1; i < n; ++i) d[i] = a[static_cast<std::size_t>(i) * n + i];
}

// Householder reduction with accumulation of the orthogonal transformation:
// on exit z holds Q with M = Q T Q^T. Classic two-pass form; slower than
// the values-only routine and used where eigenvectors are required.
void tridiagonalize_accumulate(std::vector<double>& z, int n,
                               std::vector<double>& d, std::vector<double>& e) {
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (int k = 0; k <= l; ++k)
        scale += std::fabs(z[static_cast<std::size_t>(i) * n + k]);
      if (scale == 0.0) {
        e[i] = z[static_cast<std::size_t>(i) * n + l];
      } else {
        for (int k = 0; k <= l; ++k) {
          double& zik = z[static_cast<std::size_t>(i) * n + k];
          zik /= scale;
          h += zik * zik;
        }
        double f = z[static_cast<std::size_t>(i) * n + l];
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        z[static_cast<std::size_t>(i) * n + l] = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          z[static_cast<std::size_t>(j) * n + i] =
              z[static_cast<std::size_t>(i) * n + j] / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k)
            g += z[static_cast<std::size_t>(j) * n + k] *
                 z[static_cast<std::size_t>(i) * n + k];
          for (int k = j + 1; k <= l; ++k)
            g += z[static_cast<std::size_t>(k) * n + j] *
                 z[static_cast<std::size_t>(i) * n + k];
          e[j] = g / h;
          f += e[j] * z[static_cast<std::size_t>(i) * n + j];
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = z[static_cast<std::size_t>(i) * n + j];
          e[j] = g = e[j] - hh * f;
          for (int k = 0; k <= j; ++k)
            z[static_cast<std::size_t>(j) * n + k] -=
                f * e[k] + g * z[static_cast<std::size_t>(i) * n + k];
        }
      }
    } else {
      e[i] = z[static_cast<std::size_t>(i) * n + l];
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    const int l = i - 1;
    if (d[i] != 0.0) {
      for (int j = 0; j <= l; ++j) {
        double g = 0.0;
        for (int k = 0; k <= l; ++k)
          g += z[static_cast<std::size_t>(i) * n + k] *
               z[static_cast<std::size_t>(k) * n + j];
        for (int k = 0; k <= l; ++k)
          z[static_cast<std::size_t>(k) * n + j] -=
              g * z[static_cast<std::size_t>(k) * n + i];
      }
    }
    d[i] = z[static_cast<std::size_t>(i) * n + i];
    z[static_cast<std::size_t>(i) * n + i] = 1.0;
    for (int j = 0; j <= l; ++j) {
      z[static_cast<std::size_t>(j) * n + i] = 0.0;
      z[static_cast<std::size_t>(i) * n + j] = 0.0;
    }
  }
}

// Implicitly shifted symmetric QL with Wilkinson shifts on the tridiagonal
// (d, e). If z is non-null the plane rotations are accumulated into its
// columns. Throws EigenFailure if an eigenvalue needs more than kMaxSweeps
// sweeps.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, int n,
                 std::vector<double>* z) {
  if (n <= 1) return;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweeps)
          throw EigenFailure(
              "symmetric QL failed to converge within 50 sweeps at index " +
              std::to_string(l));
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            // Underflow recovery: split the problem and restart this block.
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            for (int k = 0; k < n; ++k) {
              double& zk1 = (*z)[static_cast<std::size_t>(k) * n + i + 1];
              double& zk0 = (*z)[static_cast<std::size_t>(k) * n + i];
              f = zk1;
              zk1 = s * zk0 + c * f;
              zk0 = c * zk0 - s * f;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

Spectrum sym_eigenvalues(const SymmetricMatrix& m) {
  const int n = m.dim();
  Spectrum s;
  if (n == 0) return s;
  if (n == 1) {
    s.values = {m(0, 0)};
    return s;
  }
  std::vector<double> a = m.data();
  std::vector<double> d;
  std::vector<double> e;
  tridiagonalize(a, n, d, e);
  ql_implicit(d, e, n, nullptr);
  std::sort(d.begin(), d.end());
  s.values = std::move(d);
  return s;
}

namespace detail {

EigenSystem sym_eigensystem(const SymmetricMatrix& m) {
  const int n = m.dim();
  EigenSystem out;
  if (n == 0) return out;
  std::vector<double> z = m.data();
  std::vector<double> d;
  std::vector<double> e;
  if (n == 1) {
    d = {m(0, 0)};
    z = {1.0};
  } else {
    tridiagonalize_accumulate(z, n, d, e);
    ql_implicit(d, e, n, &z);
  }
  // Sort eigenpairs ascending, permuting columns along with values.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&d](int x, int y) { return d[x] < d[y]; });
  out.values.values.resize(n);
  out.vectors = Matrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.values.values[j] = d[order[j]];
    for (int i = 0; i < n; ++i)
      out.vectors(i, j) = z[static_cast<std::size_t>(i) * n + order[j]];
  }
  return out;
}

double power_operator_norm(const SymmetricMatrix& m, double rel_tol,
                           long long max_iters) {
  const int n = m.dim();
  if (n == 0) return 0.0;
  const std::vector<double>& a = m.data();
  if (std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; }))
    return 0.0;

  const auto matvec = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (int i = 0; i < n; ++i) {
      const double* row = &a[static_cast<std::size_t>(i) * n];
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += row[j] * x[j];
      y[i] = s;
    }
  };

  // Deterministic full-support start vector; the fixed key makes the
  // estimate reproducible across runs and platforms.
  SplitMix64 rng(0x9b97f4a7c15f39d3ull);
  std::vector<double> x(n);
  for (double& v : x) v = rng.next_unit() - 0.5;
  double nx = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
  for (double& v : x) v /= nx;

  std::vector<double> y(n);
  std::vector<double> w(n);
  double theta_prev = -1.0;
  double theta = 0.0;
  for (long long it = 0; it < max_iters; ++it) {
    matvec(x, y);                              // y = M x
    theta = std::inner_product(y.begin(), y.end(), y.begin(), 0.0);
    if (theta == 0.0) return 0.0;              // x in the kernel of M^2
    if (theta_prev >= 0.0 &&
        std::fabs(theta - theta_prev) <= rel_tol * theta)
      break;
    theta_prev = theta;
    matvec(y, w);                              // w = M^2 x
    const double nw =
        std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    if (nw == 0.0) return std::sqrt(theta);
    for (int i = 0; i < n; ++i) x[i] = w[i] / nw;
  }
  return std::sqrt(theta);
}

}  // namespace detail

double operator_norm(const SymmetricMatrix& m) {
  if (m.dim() <= 4096) return sym_eigenvalues(m).max_abs();
  return detail::power_operator_norm(m, 1e-9, 10LL * m.dim());
}

SymmetricMatrix kron(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  const int n = a.dim();
  const int k = b.dim();
  const long long dim = static_cast<long long>(n) * k;
  require(dim <= std::numeric_limits<int>::max(), "kron: result too large");
  // Both factors are stored fully symmetric, so filling every entry keeps
  // the product exactly symmetric; writing through set() per (row, col)
  // pair would double the work.
  std::vector<double> out(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double aij = a(i, j);
      for (int l = 0; l < k; ++l) {
        const std::size_t row = static_cast<std::size_t>(i) * k + l;
        double* dst = &out[row * dim + static_cast<std::size_t>(j) * k];
        if (aij == 0.0) {
          std::fill(dst, dst + k, 0.0);
        } else {
          for (int r = 0; r < k; ++r) dst[r] = aij * b(l, r);
        }
      }
    }
  }
  return SymmetricMatrix(static_cast<int>(dim), out);
}

SymmetricMatrix projector_pi(int k) {
  require(k >= 1, "projector_pi: k must be positive");
  SymmetricMatrix p(k);
  const double v = 1.0 / k;
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) p.set(i, j, v);
  return p;
}

MultisetDiff multiset_diff(const Spectrum& big, const Spectrum& small,
                           double tol) {
  require(tol >= 0.0, "multiset_diff: tolerance must be nonnegative");
  require(small.size() <= big.size(),
          "multiset_diff: small multiset exceeds big multiset");
  require(std::is_sorted(big.values.begin(), big.values.end()) &&
              std::is_sorted(small.values.begin(), small.values.end()),
          "multiset_diff: inputs must be sorted");

  const std::vector<double>& b = big.values;
  const int nb = big.size();
  std::vector<char> used(nb, 0);
  MultisetDiff out;
  const double inf = std::numeric_limits<double>::infinity();

  for (const double s : small.values) {
    int right =
        static_cast<int>(std::lower_bound(b.begin(), b.end(), s) - b.begin());
    int left = right - 1;
    while (right < nb && used[right]) ++right;
    while (left >= 0 && used[left]) --left;
    const double dl = (left >= 0) ? s - b[left] : inf;
    const double dr = (right < nb) ? b[right] - s : inf;
    // Nearest unconsumed partner, ties toward the smaller index.
    const int pick = (dl <= dr) ? left : right;
    const double dist = (dl <= dr) ? dl : dr;
    if (pick < 0 || pick >= nb || dist > tol) {
      out.match_failure = true;
    } else {
      used[pick] = 1;
    }
  }
  out.values.values.reserve(nb);
  for (int i = 0; i < nb; ++i)
    if (!used[i]) out.values.values.push_back(b[i]);
  return out;
}

}  // namespace liftspec
