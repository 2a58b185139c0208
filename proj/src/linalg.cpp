#include "k3genus/linalg.hpp"

#include "k3genus/errors.hpp"

namespace k3genus {

RationalMatrix identity_matrix(std::size_t n) {
  RationalMatrix m(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RationalMatrix transpose(const RationalMatrix& m) {
  std::size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
  RationalMatrix t(cols, std::vector<Rational>(rows, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RationalMatrix r(n, std::vector<Rational>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

std::vector<Rational> matvec(const RationalMatrix& a, const std::vector<Rational>& x) {
  std::vector<Rational> r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) r[i] += a[i][j] * x[j];
  return r;
}

Rational determinant(RationalMatrix m) {
  std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m[row][col] == 0) continue;
      Rational f = m[row][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
    }
  }
  return det;
}

RationalMatrix inverse(RationalMatrix m) {
  std::size_t n = m.size();
  RationalMatrix inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) fail(Errc::singular_basis, "matrix is singular");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rational f = m[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[row][j] -= f * m[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

bool is_skew_symmetric(const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != -m[j][i]) return false;
  return true;
}

LdltDecomposition ldlt(const RationalMatrix& g) {
  std::size_t n = g.size();
  LdltDecomposition out;
  out.lower = identity_matrix(n);
  out.diagonal.assign(n, 0);
  RationalMatrix a = g;
  for (std::size_t j = 0; j < n; ++j) {
    Rational d = a[j][j];
    for (std::size_t k = 0; k < j; ++k)
      d -= out.lower[j][k] * out.lower[j][k] * out.diagonal[k];
    if (!(d > 0))
      fail(Errc::invariant_violation, "matrix is not positive definite");
    out.diagonal[j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rational v = a[i][j];
      for (std::size_t k = 0; k < j; ++k)
        v -= out.lower[i][k] * out.lower[j][k] * out.diagonal[k];
      out.lower[i][j] = v / d;
    }
  }
  return out;
}

namespace {

bool positive_definite(const RationalMatrix& g) {
  try {
    ldlt(g);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

Rational min_eigenvalue_lower_bound(const RationalMatrix& g) {
  if (!positive_definite(g))
    fail(Errc::invariant_violation, "min_eigenvalue_lower_bound needs a PD matrix");
  // Bisection on lambda with the exact PD test applied to g - lambda*I.
  // lambda_min <= min diagonal entry, and any mid below lambda_min certifies
  // itself, so the loop always reaches a positive lower bound.
  Rational hi = g[0][0];
  for (std::size_t i = 1; i < g.size(); ++i) hi = std::min(hi, g[i][i]);
  Rational lo = 0;
  int refinements = 0;
  while (lo == 0 || refinements < 16) {
    Rational mid = (lo + hi) / 2;
    RationalMatrix shifted = g;
    for (std::size_t i = 0; i < g.size(); ++i) shifted[i][i] -= mid;
    if (positive_definite(shifted))
      lo = mid;
    else
      hi = mid;
    if (lo > 0) ++refinements;
  }
  return lo;
}

}  // namespace k3genus
