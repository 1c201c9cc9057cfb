#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace oracle {

namespace {

// Plain row-major product, independent of the library under test.
std::vector<double> mul(const std::vector<double>& a,
                        const std::vector<double>& b, int n) {
  std::vector<double> c(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      const double ail = a[static_cast<std::size_t>(i) * n + l];
      if (ail == 0.0) continue;
      for (int j = 0; j < n; ++j)
        c[static_cast<std::size_t>(i) * n + j] +=
            ail * b[static_cast<std::size_t>(l) * n + j];
    }
  return c;
}

double trace(const std::vector<double>& a, int n) {
  double t = 0.0;
  for (int i = 0; i < n; ++i) t += a[static_cast<std::size_t>(i) * n + i];
  return t;
}

double eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (const double ci : c) v = v * x + ci;
  return v;
}

double bisect(const std::vector<double>& c, double a, double b, double fa) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid == a || mid == b) return mid;
    const double fm = eval(c, mid);
    if (fm == 0.0) return mid;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> char_poly(const liftspec::SymmetricMatrix& m) {
  const int n = m.dim();
  if (n < 1 || n > 8)
    throw std::invalid_argument("char_poly: dimension must be 1..8");
  const std::vector<double>& a = m.data();
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[0] = 1.0;
  // M_0 = 0; M_k = A (M_{k-1} + c_{k-1} I); c_k = -tr(M_k) / k.
  std::vector<double> prev(static_cast<std::size_t>(n) * n, 0.0);
  for (int k = 1; k <= n; ++k) {
    std::vector<double> shifted = prev;
    for (int i = 0; i < n; ++i)
      shifted[static_cast<std::size_t>(i) * n + i] += c[static_cast<std::size_t>(k) - 1];
    prev = mul(a, shifted, n);
    c[static_cast<std::size_t>(k)] = -trace(prev, n) / k;
  }
  return c;
}

std::vector<double> real_roots(const std::vector<double>& coeffs) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  if (d < 1) return {};
  if (d == 1) return {-coeffs[1]};

  // Monic derivative; its roots cut the line into monotonic pieces.
  std::vector<double> dc(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) dc[static_cast<std::size_t>(i)] = coeffs[static_cast<std::size_t>(i)] * (d - i) / d;
  const std::vector<double> crit = real_roots(dc);

  double bound = 1.0;
  double scale = 1.0;
  for (int i = 1; i <= d; ++i) {
    bound = std::max(bound, 1.0 + std::fabs(coeffs[static_cast<std::size_t>(i)]));
    scale = std::max(scale, std::fabs(coeffs[static_cast<std::size_t>(i)]));
  }
  std::vector<double> pts{-bound};
  pts.insert(pts.end(), crit.begin(), crit.end());
  pts.push_back(bound);

  // A critical point sitting on the axis is a multiple root; it absorbs
  // the sign-change search of both neighbouring intervals.
  const double fuzz = 1e-12 * scale;
  std::vector<char> is_root(pts.size(), 0);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i)
    is_root[i] = std::fabs(eval(coeffs, pts[i])) <= fuzz;

  std::vector<double> roots;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i)
    if (is_root[i]) roots.insert(roots.end(), 2, pts[i]);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (is_root[i] || is_root[i + 1]) continue;
    const double fa = eval(coeffs, pts[i]);
    const double fb = eval(coeffs, pts[i + 1]);
    if ((fa < 0.0) != (fb < 0.0))
      roots.push_back(bisect(coeffs, pts[i], pts[i + 1], fa));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace oracle
