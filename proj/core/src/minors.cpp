#include "bruhat/minors.hpp"

#include <algorithm>

namespace bruhat {

namespace {

// Plain cofactor expansion along the first row.
Int cofactor_det(const Matrix<Int>& a) {
  const int n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  Int det = 0;
  for (int c = 0; c < n; ++c) {
    if (sgn(a(0, c)) == 0) continue;
    Matrix<Int> sub(n - 1, n - 1);
    for (int i = 1; i < n; ++i) {
      int jj = 0;
      for (int j = 0; j < n; ++j) {
        if (j == c) continue;
        sub(i - 1, jj++) = a(i, j);
      }
    }
    Int term = a(0, c) * cofactor_det(sub);
    if (c % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

// Submatrix on an explicit row/column selection (repeats allowed: a repeated
// index yields a singular submatrix, hence a zero minor).
Matrix<Int> select(const Matrix<Int>& a, const std::vector<int>& rows,
                   const std::vector<int>& cols) {
  Matrix<Int> out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<int>(i), static_cast<int>(j)) = a(rows[i], cols[j]);
  return out;
}

Int pow_int(const Int& base, int exp) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
  return out;
}

}  // namespace

Int oracle_det(const Matrix<Int>& a) {
  if (a.rows() != a.cols())
    throw DimensionMismatch("determinant of a non-square matrix");
  return a.rows() <= 6 ? cofactor_det(a) : bareiss_det(a);
}

int oracle_rank(const Matrix<Int>& a) {
  Matrix<Int> m = a;
  const int rows = m.rows(), cols = m.cols();
  Int prev = 1;
  int r = 0;
  while (r < rows && r < cols) {
    int pi = -1, pj = -1;
    for (int i = r; i < rows && pi < 0; ++i)
      for (int j = r; j < cols; ++j)
        if (sgn(m(i, j)) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    if (pi != r)
      for (int j = 0; j < cols; ++j) std::swap(m(r, j), m(pi, j));
    if (pj != r)
      for (int i = 0; i < rows; ++i) std::swap(m(i, r), m(i, pj));
    for (int i = r + 1; i < rows; ++i) {
      for (int j = r + 1; j < cols; ++j) {
        Int num = m(r, r) * m(i, j) - m(i, r) * m(r, j);
        if (!RingTraits<Int>::divides(num, prev)) throw InexactDivision();
        m(i, j) = RingTraits<Int>::exact_quotient(num, prev);
      }
      m(i, r) = 0;
    }
    prev = m(r, r);
    ++r;
  }
  return r;
}

Int alpha_minor(const Matrix<Int>& a, const MinorSpec& spec) {
  const int k = spec.k, i = spec.i, j = spec.j;
  if (k < 1 || k > std::min(a.rows(), a.cols()))
    throw IndexOutOfRange("minor order " + std::to_string(k) + " for " +
                          std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()));
  if (i < 0 || i >= a.rows() || j < 0 || j >= a.cols())
    throw IndexOutOfRange("minor final row/column outside matrix");
  std::vector<int> rows, cols;
  rows.reserve(static_cast<std::size_t>(k));
  cols.reserve(static_cast<std::size_t>(k));
  for (int t = 0; t < k - 1; ++t) {
    rows.push_back(t);
    cols.push_back(t);
  }
  rows.push_back(i);
  cols.push_back(j);
  return oracle_det(select(a, rows, cols));
}

Int leading_minor(const Matrix<Int>& a, int k) {
  if (k == 0) return 1;
  return alpha_minor(a, MinorSpec{k, k - 1, k - 1});
}

std::vector<Int> leading_minors(const Matrix<Int>& a) {
  std::vector<Int> out;
  const int lim = std::min(a.rows(), a.cols());
  out.reserve(static_cast<std::size_t>(lim));
  for (int k = 1; k <= lim; ++k) out.push_back(leading_minor(a, k));
  return out;
}

bool has_generic_profile(const Matrix<Int>& a) {
  if (a.rows() != a.cols() || a.rows() == 0) return false;
  // Fraction-free elimination without pivoting: the pivots are exactly the
  // leading principal minors, so a zero pivot certifies a non-generic profile.
  Matrix<Int> m = a;
  const int n = m.rows();
  Int prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) return false;
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        if (!RingTraits<Int>::divides(num, prev)) throw InexactDivision();
        m(i, j) = RingTraits<Int>::exact_quotient(num, prev);
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sgn(m(n - 1, n - 1)) != 0;
}

MinorsMatrix minors_matrix(const Matrix<Int>& a, int k, int s) {
  if (k < 0 || s <= k || s > std::min(a.rows(), a.cols()))
    throw IndexOutOfRange("minors window needs 0 <= k < s <= min(dims)");
  MinorsMatrix out;
  out.k = k;
  out.s = s;
  out.values = Matrix<Int>(s - k, s - k);
  for (int r = 0; r < s - k; ++r)
    for (int c = 0; c < s - k; ++c)
      out.values(r, c) = alpha_minor(a, MinorSpec{k + 1, k + r, k + c});
  return out;
}

Int delta_minor(const Matrix<Int>& a, int k, int i, int j) {
  if (k < 1 || k > std::min(a.rows(), a.cols()))
    throw IndexOutOfRange("delta minor order outside matrix");
  if (i < 0 || i >= k || j < 0 || j >= a.cols())
    throw IndexOutOfRange("delta minor replacement indices");
  Matrix<Int> m = a.block(0, 0, k, k);
  for (int r = 0; r < k; ++r) m(r, i) = a(r, j);
  return oracle_det(m);
}

bool check_sylvester(const Matrix<Int>& a, int k, int s) {
  MinorsMatrix w = minors_matrix(a, k, s);
  Int lhs = oracle_det(w.values);
  Int rhs = leading_minor(a, s) * pow_int(leading_minor(a, k), s - k - 1);
  return lhs == rhs;
}

namespace {

// Bordered minor that treats an order beyond the matrix as zero; used by the
// expansion identities where the s+1 term falls off the matrix edge.
Int alpha_or_zero(const Matrix<Int>& a, int k, int i, int j) {
  if (k > std::min(a.rows(), a.cols())) return 0;
  return alpha_minor(a, MinorSpec{k, i, j});
}

}  // namespace

bool check_base_minor_identity(const Matrix<Int>& a, int i, int j, int k,
                               int s) {
  if (a.rows() != a.cols())
    throw DimensionMismatch("identity check expects a square matrix");
  const int n = a.rows();
  if (k < 0 || s <= k || s > n) throw IndexOutOfRange("orders need 0 <= k < s <= n");
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw IndexOutOfRange("entry indices outside matrix");
  Int lhs = leading_minor(a, s) * alpha_or_zero(a, k + 1, i, j) -
            leading_minor(a, k) * alpha_or_zero(a, s + 1, i, j);
  Int rhs = 0;
  for (int p = k; p < s; ++p)
    rhs += alpha_minor(a, MinorSpec{k + 1, i, p}) * delta_minor(a, s, p, j);
  return lhs == rhs;
}

bool check_minor_u_identity(const Matrix<Int>& a, int s) {
  if (a.rows() != a.cols())
    throw DimensionMismatch("identity check expects a square matrix");
  const int n = a.rows();
  if (s < 1 || s >= n) throw IndexOutOfRange("window end needs 1 <= s < n");
  const Int alpha_s = leading_minor(a, s);
  for (int r = 0; r < s; ++r) {
    for (int c = s; c < n; ++c) {
      Int lhs = alpha_s * alpha_minor(a, MinorSpec{r + 1, r, c});
      Int rhs = 0;
      for (int t = r; t < s; ++t)
        rhs += alpha_minor(a, MinorSpec{r + 1, r, t}) * delta_minor(a, s, t, c);
      if (lhs != rhs) return false;
    }
  }
  return true;
}

}  // namespace bruhat
