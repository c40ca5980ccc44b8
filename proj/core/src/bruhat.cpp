#include "bruhat/bruhat.hpp"

#include <algorithm>
#include <utility>

namespace bruhat {
namespace {

bool fail(std::string* why, const std::string& reason) {
  if (why) *why = reason;
  return false;
}

/// flip * x * flip for square x (reverses both index orders).
template <class T>
Matrix<T> flip_conjugate(const Matrix<T>& x) {
  const Permutation s = flip(x.rows());
  return apply_perm(s, apply_perm(s, x, Side::Left), Side::Right);
}

}  // namespace

BruhatFactors bruhat_flip(const Matrix<Int>& a, OpCounter& counter) {
  const int n = a.rows();
  const Permutation s = flip(n);
  const Matrix<Int> b = apply_perm(s, a, Side::Left);
  const LduFactors f = ldu_full(b, counter);  // ZeroPivotMinor if non-generic

  BruhatFactors out;
  out.rank = n;
  out.V = flip_conjugate(f.L);
  out.U = f.U;
  out.w_perm = s;
  out.w_scales.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.w_scales[static_cast<std::size_t>(i)] =
        f.d_scales[static_cast<std::size_t>(n - 1 - i)];
  return out;
}

BruhatFactors bruhat_general(const Matrix<Int>& a, OpCounter& counter) {
  const int n = a.rows(), m = a.cols();
  const Permutation s = flip(n);
  const Matrix<Int> b = apply_perm(s, a, Side::Left);
  const EtdFactors f = etd(b, counter);
  const LduGrouping g = etd_to_ldu_grouping(f);

  const Matrix<Int> v_full = flip_conjugate(g.lower);
  const Matrix<Rat> w_full = apply_perm(s, g.middle, Side::Left);
  const Matrix<Int>& u_full = g.upper;
  if (debug_asserts_enabled()) {
    if (!is_upper_triangular(v_full) || !is_upper_triangular(u_full))
      throw Error("Bruhat regrouping lost triangularity");
  }

  // w_full has one nonzero per occupied row and column; compact the factors
  // to those rows and columns.
  struct Entry {
    int row, col;
    Rat val;
  };
  std::vector<Entry> entries;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (!w_full(i, j).is_zero()) entries.push_back({i, j, w_full(i, j)});
  const int r = static_cast<int>(entries.size());
  if (r != f.rank) throw Error("scaled permutation size differs from rank");
  std::vector<int> cols;
  cols.reserve(entries.size());
  for (const Entry& e : entries) cols.push_back(e.col);
  std::sort(cols.begin(), cols.end());

  BruhatFactors out;
  out.rank = r;
  out.V = Matrix<Int>(n, r);
  out.U = Matrix<Int>(r, m);
  std::vector<int> images(static_cast<std::size_t>(r));
  out.w_scales.resize(static_cast<std::size_t>(r));
  for (int k = 0; k < r; ++k) {
    const Entry& e = entries[static_cast<std::size_t>(k)];  // rows ascending
    for (int i = 0; i < n; ++i) out.V(i, k) = v_full(i, e.row);
    const int ci = static_cast<int>(
        std::lower_bound(cols.begin(), cols.end(), e.col) - cols.begin());
    images[static_cast<std::size_t>(k)] = ci;
    out.w_scales[static_cast<std::size_t>(k)] = e.val;
  }
  for (int k = 0; k < r; ++k)
    for (int j = 0; j < m; ++j)
      out.U(k, j) = u_full(cols[static_cast<std::size_t>(k)], j);
  out.w_perm = Permutation(std::move(images));

  // Prefer nonnegative diagonals; each flip is compensated inside w, so the
  // product is unchanged.
  for (int k = 0; k < r && k < n; ++k) {
    if (out.V(k, k) < 0) {
      for (int i = 0; i < n; ++i) out.V(i, k) = -out.V(i, k);
      out.w_scales[static_cast<std::size_t>(k)] =
          -out.w_scales[static_cast<std::size_t>(k)];
    }
  }
  const Permutation inv = out.w_perm.inverse();
  for (int l = 0; l < r && l < m; ++l) {
    if (out.U(l, l) < 0) {
      for (int j = 0; j < m; ++j) out.U(l, j) = -out.U(l, j);
      const int k = inv(l);
      out.w_scales[static_cast<std::size_t>(k)] =
          -out.w_scales[static_cast<std::size_t>(k)];
    }
  }
  return out;
}

Matrix<Rat> w_dense(const BruhatFactors& f) {
  Matrix<Rat> w(f.rank, f.rank);
  for (int k = 0; k < f.rank; ++k)
    w(k, f.w_perm(k)) = f.w_scales[static_cast<std::size_t>(k)];
  return w;
}

Matrix<Int> reconstruct_bruhat(const BruhatFactors& f) {
  OpCounter scratch;
  return to_ring(mat_mul(
      to_field(f.V), mat_mul(w_dense(f), to_field(f.U), scratch), scratch));
}

bool verify_bruhat(const Matrix<Int>& a, const BruhatFactors& f,
                   std::string* why) {
  const int n = a.rows(), m = a.cols(), r = f.rank;
  if (f.V.rows() != n || f.V.cols() != r || f.U.rows() != r ||
      f.U.cols() != m || f.w_perm.size() != r ||
      static_cast<int>(f.w_scales.size()) != r)
    throw DimensionMismatch("Bruhat factor shapes do not conform");
  if (r < 0 || r > std::min(n, m)) return fail(why, "rank out of range");
  for (const Rat& s : f.w_scales)
    if (s.is_zero()) return fail(why, "zero scale in w");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < r; ++j)
      if (i - j > n - r && f.V(i, j) != 0)
        return fail(why, "V is not upper trapezoidal");
  if (!is_upper_triangular(f.U)) return fail(why, "U is not upper triangular");
  if (r == n && n == m) {
    for (int i = 0; i < n; ++i)
      if (f.V(i, i) == 0 || f.U(i, i) == 0)
        return fail(why, "zero diagonal in the square full-rank case");
  }
  OpCounter scratch;
  const Matrix<Rat> prod = mat_mul(
      to_field(f.V), mat_mul(w_dense(f), to_field(f.U), scratch), scratch);
  if (!(prod == to_field(a)))
    return fail(why, "V*w*U does not reconstruct the matrix");
  return true;
}

}  // namespace bruhat
