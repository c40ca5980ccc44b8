#include "bruhat/etd.hpp"

#include <cstdlib>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace bruhat {

bool debug_asserts_enabled() {
  static const bool on = [] {
    const char* v = std::getenv("BRUHAT_DEBUG_ASSERTS");
    return v != nullptr && std::string(v) == "1";
  }();
  return on;
}

namespace {

bool debug_checks_on() { return debug_asserts_enabled(); }

std::vector<Rat> as_field_scales(const std::vector<Int>& v) {
  std::vector<Rat> out;
  out.reserve(v.size());
  for (const Int& x : v) out.emplace_back(x);
  return out;
}

/// Pt * x (rows pulled back through the permutation).
template <class T>
Matrix<T> perm_rows_t(const Permutation& p, const Matrix<T>& x) {
  return apply_perm(p.inverse(), x, Side::Left);
}

/// x * Qt (columns pulled back through the permutation).
template <class T>
Matrix<T> perm_cols_t(const Matrix<T>& x, const Permutation& q) {
  return apply_perm(q.inverse(), x, Side::Right);
}

/// Forward substitution: the unique X with l * X = b (l lower triangular,
/// nonzero diagonal).
Matrix<Rat> solve_lower_left(const Matrix<Rat>& l, const Matrix<Rat>& b,
                             OpCounter& counter) {
  if (l.rows() != l.cols() || l.rows() != b.rows())
    throw DimensionMismatch("triangular solve shapes");
  Matrix<Rat> x(b.rows(), b.cols());
  for (int j = 0; j < b.cols(); ++j)
    for (int i = 0; i < b.rows(); ++i) {
      Rat acc = b(i, j);
      for (int k = 0; k < i; ++k)
        acc = acc - mul(l(i, k), x(k, j), counter);
      x(i, j) = exact_div(acc, l(i, i), counter);
    }
  return x;
}

/// Back substitution on the right: the unique X with X * u = b (u upper
/// triangular, nonzero diagonal).
Matrix<Rat> solve_upper_right(const Matrix<Rat>& b, const Matrix<Rat>& u,
                              OpCounter& counter) {
  if (u.rows() != u.cols() || u.rows() != b.cols())
    throw DimensionMismatch("triangular solve shapes");
  Matrix<Rat> x(b.rows(), b.cols());
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Rat acc = b(i, j);
      for (int k = 0; k < j; ++k)
        acc = acc - mul(x(i, k), u(k, j), counter);
      x(i, j) = exact_div(acc, u(j, j), counter);
    }
  return x;
}

/// 0/1 matrix that reorders a block-partitioned vector: block-row i is the
/// identity of size sizes[order[i]] placed in block-column order[i], so
/// left-multiplying picks source block order[i] into destination slot i.
Matrix<Int> block_perm_matrix(const std::vector<int>& sizes,
                              const std::vector<int>& order) {
  std::vector<int> offsets(sizes.size() + 1, 0);
  for (std::size_t k = 0; k < sizes.size(); ++k)
    offsets[k + 1] = offsets[k] + sizes[k];
  const int n = offsets.back();
  Matrix<Int> m(n, n);
  int row = 0;
  for (int src : order) {
    for (int t = 0; t < sizes[static_cast<std::size_t>(src)]; ++t, ++row)
      m(row, offsets[static_cast<std::size_t>(src)] + t) = 1;
  }
  return m;
}

Matrix<Int> compose(const std::vector<Matrix<Int>>& factors) {
  OpCounter scratch;  // permutation bookkeeping, outside the cost model
  Matrix<Int> acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i)
    acc = mat_mul(acc, factors[i], scratch);
  return acc;
}

EtdFactors etd_impl(const Matrix<Int>& a, OpCounter& counter);
EtdFactors etd_rational_impl(const Matrix<Rat>& x, OpCounter& counter);

EtdFactors trivial_factors(int rows, int cols) {
  EtdFactors f;
  f.P = Permutation::identity(rows);
  f.Q = Permutation::identity(cols);
  f.L = Matrix<Int>::identity(rows);
  f.U = Matrix<Int>::identity(cols);
  f.rank = 0;
  return f;
}

bool structure_ok(const Matrix<Rat>& a, const EtdFactors& f, std::string* why);

/// Compact one-line rendering of a matrix for diagnostic messages.
std::string describe(const Matrix<Rat>& m) {
  std::string out = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " [";
  for (int i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += " ";
      out += m(i, j).num().get_str();
      if (m(i, j).den() != 1) out += "/" + m(i, j).den().get_str();
    }
  }
  return out + "]";
}

/// Common tail of every constructed case: clear any denominators left in the
/// leading columns of L / rows of U into the diagonal denominators, project
/// to the ring, convert the accumulated 0/1 permutation matrices, and (in
/// debug mode) re-validate the whole contract against the input.
EtdFactors finalize(const Matrix<Rat>& input, const Matrix<Int>& p_mat,
                    Matrix<Rat> l_f, std::vector<Int> dens, Matrix<Rat> u_f,
                    const Matrix<Int>& q_mat, OpCounter& counter) {
  const int rank = static_cast<int>(dens.size());
  for (int j = 0; j < rank; ++j) {
    Int s(1);
    for (int i = 0; i < l_f.rows(); ++i)
      s = RingTraits<Int>::lcm(s, l_f(i, j).den());
    if (s != 1) {
      const Rat sr{s};
      for (int i = 0; i < l_f.rows(); ++i)
        l_f(i, j) = mul(l_f(i, j), sr, counter);
      dens[static_cast<std::size_t>(j)] =
          mul(dens[static_cast<std::size_t>(j)], s, counter);
    }
  }
  for (int i = 0; i < rank; ++i) {
    Int s(1);
    for (int j = 0; j < u_f.cols(); ++j)
      s = RingTraits<Int>::lcm(s, u_f(i, j).den());
    if (s != 1) {
      const Rat sr{s};
      for (int j = 0; j < u_f.cols(); ++j)
        u_f(i, j) = mul(u_f(i, j), sr, counter);
      dens[static_cast<std::size_t>(i)] =
          mul(dens[static_cast<std::size_t>(i)], s, counter);
    }
  }
  EtdFactors f;
  f.L = to_ring(l_f);  // InexactDivision here would be an internal error
  f.U = to_ring(u_f);
  f.P = permutation_from_matrix(p_mat);
  f.Q = permutation_from_matrix(q_mat);
  f.d_denoms = std::move(dens);
  f.rank = rank;
  if (debug_checks_on()) {
    std::string why;
    if (!structure_ok(input, f, &why))
      throw Error("triangular decomposition internal check failed: " + why +
                  " on " + describe(input));
  }
  return f;
}

EtdFactors finalize(const Matrix<Int>& input, const Matrix<Int>& p_mat,
                    Matrix<Rat> l_f, std::vector<Int> dens, Matrix<Rat> u_f,
                    const Matrix<Int>& q_mat, OpCounter& counter) {
  return finalize(to_field(input), p_mat, std::move(l_f), std::move(dens),
                  std::move(u_f), q_mat, counter);
}

// ---------------------------------------------------------------------------
// Base cases
// ---------------------------------------------------------------------------

EtdFactors base_2x2(const Matrix<Int>& a, OpCounter& counter) {
  const Int& al = a(0, 0);
  const Int& be = a(0, 1);
  const Int& ga = a(1, 0);
  const Int& de = a(1, 1);
  const Int det = mul(al, de, counter) - mul(be, ga, counter);
  const bool full = det != 0;
  const Int eps = full ? det : Int(1);
  const Permutation id2 = Permutation::identity(2);
  const Permutation swap({1, 0});

  EtdFactors f;
  Matrix<Rat> l_f, u_f;
  std::vector<Int> dens;
  Matrix<Int> p_mat, q_mat;
  if (al != 0) {
    p_mat = id2.to_matrix<Int>();
    q_mat = id2.to_matrix<Int>();
    l_f = to_field(Matrix<Int>{{al, 0}, {ga, eps}});
    u_f = to_field(Matrix<Int>{{al, be}, {0, eps}});
    dens.push_back(al);
    if (full) dens.push_back(mul(det, al, counter));
  } else if (be != 0) {
    p_mat = id2.to_matrix<Int>();
    q_mat = swap.to_matrix<Int>();
    l_f = to_field(Matrix<Int>{{be, 0}, {de, eps}});
    u_f = to_field(Matrix<Int>{{be, 0}, {0, eps}});
    dens.push_back(be);
    if (full) dens.push_back(-mul(det, be, counter));
  } else if (ga != 0) {
    // First row entirely zero, so the determinant is zero: rank one.
    p_mat = swap.to_matrix<Int>();
    q_mat = id2.to_matrix<Int>();
    l_f = to_field(Matrix<Int>{{ga, 0}, {0, eps}});
    u_f = to_field(Matrix<Int>{{ga, de}, {0, eps}});
    dens.push_back(ga);
  } else {
    // Only de is nonzero (the zero matrix was dispatched earlier).
    p_mat = swap.to_matrix<Int>();
    q_mat = swap.to_matrix<Int>();
    l_f = to_field(Matrix<Int>{{de, 0}, {0, 1}});
    u_f = to_field(Matrix<Int>{{de, 0}, {0, 1}});
    dens.push_back(de);
  }
  counter.base_case_muls += 2;  // the two determinant products
  return finalize(a, p_mat, std::move(l_f), std::move(dens), std::move(u_f),
                  q_mat, counter);
}

/// Images of the cycle that rotates the first nonzero position p of a thin
/// row to the front while shifting the zero positions before it one step
/// right: 0 -> p, j -> j-1 for 1 <= j <= p, identity beyond p. Composing the
/// single pivot column with this permutation reproduces the row, and the map
/// is order-preserving away from position p, which keeps conjugated
/// triangularity intact.
std::vector<int> rotation_images(int m, int p) {
  std::vector<int> images(static_cast<std::size_t>(m));
  images[0] = p;
  for (int j = 1; j <= p; ++j) images[static_cast<std::size_t>(j)] = j - 1;
  for (int j = p + 1; j < m; ++j) images[static_cast<std::size_t>(j)] = j;
  return images;
}

EtdFactors base_thin_row(const Matrix<Int>& a, OpCounter& counter) {
  const int m = a.cols();
  int p = 0;
  while (a(0, p) == 0) ++p;
  const Int pivot = a(0, p);
  const Permutation q{rotation_images(m, p)};
  Matrix<Int> u = Matrix<Int>::identity(m);
  u(0, 0) = pivot;
  for (int l = p + 1; l < m; ++l) u(0, l) = a(0, l);
  Matrix<Int> p_mat = Matrix<Int>::identity(1);
  counter.base_case_muls += 1;
  return finalize(a, p_mat, to_field(Matrix<Int>{{pivot}}), {pivot},
                  to_field(u), q.to_matrix<Int>(), counter);
}

EtdFactors base_thin_col(const Matrix<Int>& a, OpCounter& counter) {
  const EtdFactors row = base_thin_row(a.transposed(), counter);
  return finalize(a, row.Q.inverse().to_matrix<Int>(),
                  to_field(row.U.transposed()), row.d_denoms,
                  to_field(row.L.transposed()), Matrix<Int>::identity(1),
                  counter);
}

// ---------------------------------------------------------------------------
// Recursive construction
// ---------------------------------------------------------------------------

/// Shared data for the rank-deficient leading-block branches.
struct Case2Prep {
  Matrix<Int> l0, m0, u0, v0;  // blocks of the leading factorization
  Matrix<Rat> b0, b1, c0, c1;  // corrected border blocks
  Matrix<Rat> xl, xu;          // c0 * diag(dens1), diag(dens1) * b0
  Matrix<Rat> dhat;            // Schur-corrected trailing block
};

Case2Prep prepare_case2(const EtdFactors& f1, const Matrix<Int>& b,
                        const Matrix<Int>& c, const Matrix<Int>& d,
                        OpCounter& counter) {
  const int np = f1.L.rows();
  const int r = f1.rank;
  Case2Prep out;
  out.l0 = f1.L.block(0, 0, r, r);
  out.m0 = f1.L.block(r, 0, np - r, r);
  out.u0 = f1.U.block(0, 0, r, r);
  out.v0 = f1.U.block(0, r, r, np - r);
  const Matrix<Int> bt = perm_rows_t(f1.P, b);
  const Matrix<Int> ct = perm_cols_t(c, f1.Q);
  out.b0 = solve_lower_left(to_field(out.l0),
                            to_field(bt.block(0, 0, r, b.cols())), counter);
  out.b1 = to_field(bt.block(r, 0, np - r, b.cols())) -
           mat_mul(to_field(out.m0), out.b0, counter);
  out.c0 = solve_upper_right(to_field(ct.block(0, 0, c.rows(), r)),
                             to_field(out.u0), counter);
  out.c1 = to_field(ct.block(0, r, c.rows(), np - r)) -
           mat_mul(out.c0, to_field(out.v0), counter);
  const std::vector<Rat> e1 = as_field_scales(f1.d_denoms);
  out.xl = apply_col_scales(out.c0, e1, counter);
  out.xu = apply_row_scales(out.b0, e1, counter);
  out.dhat = to_field(d) - mat_mul(out.xl, out.b0, counter);
  return out;
}

EtdFactors case_full_rank(const Matrix<Int>& a, const EtdFactors& f1,
                          const Matrix<Int>& b, const Matrix<Int>& c,
                          const Matrix<Int>& d, OpCounter& counter) {
  const int np = f1.L.rows();
  const Matrix<Rat> bt = to_field(perm_rows_t(f1.P, b));
  const Matrix<Rat> ct = to_field(perm_cols_t(c, f1.Q));
  const Matrix<Rat> x0 = solve_upper_right(ct, to_field(f1.U), counter);
  const Matrix<Rat> y0 = solve_lower_left(to_field(f1.L), bt, counter);
  const std::vector<Rat> e1 = as_field_scales(f1.d_denoms);
  const Matrix<Rat> xs = apply_col_scales(x0, e1, counter);
  const Matrix<Rat> ys = apply_row_scales(y0, e1, counter);
  const Matrix<Rat> dhat = to_field(d) - mat_mul(xs, y0, counter);
  const EtdFactors f2 = etd_rational_impl(dhat, counter);

  const int n2 = d.rows(), m2 = d.cols();
  Matrix<Rat> l_f = assemble_blocks<Rat>(
      {{to_field(f1.L), Matrix<Rat>::zero(np, n2)},
       {perm_rows_t(f2.P, xs), to_field(f2.L)}});
  Matrix<Rat> u_f = assemble_blocks<Rat>(
      {{to_field(f1.U), perm_cols_t(ys, f2.Q)},
       {Matrix<Rat>::zero(m2, np), to_field(f2.U)}});
  std::vector<Int> dens = f1.d_denoms;
  dens.insert(dens.end(), f2.d_denoms.begin(), f2.d_denoms.end());
  const Matrix<Int> p_mat =
      block_diag<Int>({f1.P.to_matrix<Int>(), f2.P.to_matrix<Int>()});
  const Matrix<Int> q_mat =
      block_diag<Int>({f1.Q.to_matrix<Int>(), f2.Q.to_matrix<Int>()});
  return finalize(a, p_mat, std::move(l_f), std::move(dens), std::move(u_f),
                  q_mat, counter);
}

EtdFactors case_zero_borders(const Matrix<Int>& a, const EtdFactors& f1,
                             const Case2Prep& p2, OpCounter& counter) {
  const int np = f1.L.rows();
  const int r = f1.rank;
  const int n2 = p2.dhat.rows(), m2 = p2.dhat.cols();
  const EtdFactors f2 = etd_rational_impl(p2.dhat, counter);
  const int r2 = f2.rank;

  // Row bands (r, r2, np-r, n2-r2) and column bands (r, r2, np-r, m2-r2):
  // the content bands come first so the diagonal denominators stay
  // contiguous, and the two identity bands are ordered by where their rows
  // and columns land in the input, which keeps the assembled permutations
  // order-preserving on the trailing range.
  const Matrix<Rat> xl2 = perm_rows_t(f2.P, p2.xl);  // n2 x r
  const Matrix<Rat> xu2 = perm_cols_t(p2.xu, f2.Q);  // r x m2
  const auto zr = [](int h, int w) { return Matrix<Rat>::zero(h, w); };
  const auto ident = [](int k) {
    return to_field(Matrix<Int>::identity(k));
  };
  Matrix<Rat> l_f = assemble_blocks<Rat>(
      {{to_field(p2.l0), zr(r, r2), zr(r, np - r), zr(r, n2 - r2)},
       {xl2.block(0, 0, r2, r), to_field(f2.L.block(0, 0, r2, r2)),
        zr(r2, np - r), zr(r2, n2 - r2)},
       {to_field(p2.m0), zr(np - r, r2), ident(np - r), zr(np - r, n2 - r2)},
       {xl2.block(r2, 0, n2 - r2, r), to_field(f2.L.block(r2, 0, n2 - r2, r2)),
        zr(n2 - r2, np - r), ident(n2 - r2)}});
  Matrix<Rat> u_f = assemble_blocks<Rat>(
      {{to_field(p2.u0), xu2.block(0, 0, r, r2), to_field(p2.v0),
        xu2.block(0, r2, r, m2 - r2)},
       {zr(r2, r), to_field(f2.U.block(0, 0, r2, r2)), zr(r2, np - r),
        to_field(f2.U.block(0, r2, r2, m2 - r2))},
       {zr(np - r, r), zr(np - r, r2), ident(np - r), zr(np - r, m2 - r2)},
       {zr(m2 - r2, r), zr(m2 - r2, r2), zr(m2 - r2, np - r),
        ident(m2 - r2)}});
  std::vector<Int> dens = f1.d_denoms;
  dens.insert(dens.end(), f2.d_denoms.begin(), f2.d_denoms.end());

  const Matrix<Int> sig_r =
      block_perm_matrix({r, np - r, r2, n2 - r2}, {0, 2, 1, 3});
  const Matrix<Int> sig_c =
      block_perm_matrix({r, np - r, r2, m2 - r2}, {0, 2, 1, 3});
  const Matrix<Int> p_mat = compose(
      {block_diag<Int>({f1.P.to_matrix<Int>(), Matrix<Int>::identity(n2)}),
       block_diag<Int>({Matrix<Int>::identity(np), f2.P.to_matrix<Int>()}),
       sig_r.transposed()});
  const Matrix<Int> q_mat = compose(
      {sig_c,
       block_diag<Int>({Matrix<Int>::identity(np), f2.Q.to_matrix<Int>()}),
       block_diag<Int>({f1.Q.to_matrix<Int>(), Matrix<Int>::identity(m2)})});
  return finalize(a, p_mat, std::move(l_f), std::move(dens), std::move(u_f),
                  q_mat, counter);
}

EtdFactors case_general(const Matrix<Int>& a, const EtdFactors& f1,
                        const Case2Prep& p2, OpCounter& counter) {
  const int np = f1.L.rows();
  const int r = f1.rank;
  const int nb = p2.dhat.rows();  // rows below the leading block
  const int mb = p2.dhat.cols();  // columns right of the leading block

  const EtdFactors fc = etd_rational_impl(p2.c1, counter);  // nb x (np-r)
  const EtdFactors fb = etd_rational_impl(p2.b1, counter);  // (np-r) x mb
  const int r2 = fc.rank;
  const int r3 = fb.rank;

  const Matrix<Rat> dprime = solve_upper_right(
      solve_lower_left(to_field(fc.L),
                       perm_rows_t(fc.P, perm_cols_t(p2.dhat, fb.Q)), counter),
      to_field(fb.U), counter);
  const Matrix<Rat> d1p = dprime.block(0, 0, r2, r3);
  const Matrix<Rat> d3p = dprime.block(0, r3, r2, mb - r3);
  const Matrix<Rat> d2p = dprime.block(r2, 0, nb - r2, r3);
  const Matrix<Rat> d4p = dprime.block(r2, r3, nb - r2, mb - r3);

  const Matrix<Int> l2p = fc.L.block(0, 0, r2, r2);
  const Matrix<Int> m2 = fc.L.block(r2, 0, nb - r2, r2);
  const Matrix<Int> u2p = fc.U.block(0, 0, r2, r2);
  const Matrix<Int> v2 = fc.U.block(0, r2, r2, (np - r) - r2);
  const Matrix<Int> l3p = fb.L.block(0, 0, r3, r3);
  const Matrix<Int> m3 = fb.L.block(r3, 0, (np - r) - r3, r3);
  const Matrix<Int> u3p = fb.U.block(0, 0, r3, r3);
  const Matrix<Int> v3 = fb.U.block(0, r3, r3, mb - r3);

  const std::vector<Rat> e2 = as_field_scales(fc.d_denoms);
  const std::vector<Rat> e3 = as_field_scales(fb.d_denoms);
  const Matrix<Rat> m7 = apply_col_scales(d2p, e3, counter);
  const Matrix<Rat> v7 =
      apply_row_scales(mat_mul(d1p, to_field(u3p), counter), e2, counter);
  const Matrix<Rat> v8 = apply_row_scales(
      mat_mul(d1p, to_field(v3), counter) + d3p, e2, counter);

  const EtdFactors f4 = etd_rational_impl(d4p, counter);
  const int r4 = f4.rank;

  const Matrix<Int> m0p = perm_rows_t(fb.P, p2.m0);
  const Matrix<Int> m1 = m0p.block(0, 0, r3, r);
  const Matrix<Int> m4 = m0p.block(r3, 0, (np - r) - r3, r);
  const Matrix<Rat> c0e = perm_rows_t(fc.P, p2.xl);
  const Matrix<Rat> m5 = c0e.block(0, 0, r2, r);
  const Matrix<Rat> m6 = c0e.block(r2, 0, nb - r2, r);
  const Matrix<Int> v0q = perm_cols_t(p2.v0, fc.Q);
  const Matrix<Int> v1 = v0q.block(0, 0, r, r2);
  const Matrix<Int> v4 = v0q.block(0, r2, r, (np - r) - r2);
  const Matrix<Rat> b0q = perm_cols_t(p2.xu, fb.Q);
  const Matrix<Rat> v5 = b0q.block(0, 0, r, r3);
  const Matrix<Rat> v6 = b0q.block(0, r3, r, mb - r3);

  const Matrix<Rat> m6p = perm_rows_t(f4.P, m6);
  const Matrix<Rat> m7p = perm_rows_t(f4.P, m7);
  const Matrix<Rat> m2p = perm_rows_t(f4.P, to_field(m2));
  const Matrix<Rat> v6p = perm_cols_t(v6, f4.Q);
  const Matrix<Rat> v8p = perm_cols_t(v8, f4.Q);
  const Matrix<Rat> v3p = perm_cols_t(to_field(v3), f4.Q);

  // Stacked band sizes. Content bands (r, r2, r3, r4) come first so the
  // diagonal denominators stay contiguous; the two trailing identity bands
  // are ordered by where their rows/columns land in the input, which keeps
  // the assembled permutations order-preserving on the trailing range. That
  // forces the Schur factor's band to split at its rank.
  const int h5 = (np - r) - r3;  // rows: identity band from the leading block
  const int h6 = (nb - r2) - r4;  // rows: trailing rows of the Schur factor
  const int w5 = (np - r) - r2;  // cols: identity band from the leading block
  const int w6 = (mb - r3) - r4;  // cols: trailing columns of the Schur factor
  const auto zr = [](int h, int w) { return Matrix<Rat>::zero(h, w); };
  const auto ident = [](int k) {
    return to_field(Matrix<Int>::identity(k));
  };
  Matrix<Rat> l_f = assemble_blocks<Rat>(
      {{to_field(p2.l0), zr(r, r2), zr(r, r3), zr(r, r4), zr(r, h5),
        zr(r, h6)},
       {m5, to_field(l2p), zr(r2, r3), zr(r2, r4), zr(r2, h5), zr(r2, h6)},
       {to_field(m1), zr(r3, r2), to_field(l3p), zr(r3, r4), zr(r3, h5),
        zr(r3, h6)},
       {m6p.block(0, 0, r4, r), m2p.block(0, 0, r4, r2),
        m7p.block(0, 0, r4, r3), to_field(f4.L.block(0, 0, r4, r4)),
        zr(r4, h5), zr(r4, h6)},
       {to_field(m4), zr(h5, r2), to_field(m3), zr(h5, r4), ident(h5),
        zr(h5, h6)},
       {m6p.block(r4, 0, h6, r), m2p.block(r4, 0, h6, r2),
        m7p.block(r4, 0, h6, r3), to_field(f4.L.block(r4, 0, h6, r4)),
        zr(h6, h5), ident(h6)}});
  Matrix<Rat> u_f = assemble_blocks<Rat>(
      {{to_field(p2.u0), to_field(v1), v5, v6p.block(0, 0, r, r4),
        to_field(v4), v6p.block(0, r4, r, w6)},
       {zr(r2, r), to_field(u2p), v7, v8p.block(0, 0, r2, r4), to_field(v2),
        v8p.block(0, r4, r2, w6)},
       {zr(r3, r), zr(r3, r2), to_field(u3p), v3p.block(0, 0, r3, r4),
        zr(r3, w5), v3p.block(0, r4, r3, w6)},
       {zr(r4, r), zr(r4, r2), zr(r4, r3), to_field(f4.U.block(0, 0, r4, r4)),
        zr(r4, w5), to_field(f4.U.block(0, r4, r4, w6))},
       {zr(w5, r), zr(w5, r2), zr(w5, r3), zr(w5, r4), ident(w5),
        zr(w5, w6)},
       {zr(w6, r), zr(w6, r2), zr(w6, r3), zr(w6, r4), zr(w6, w5),
        ident(w6)}});

  std::vector<Int> dens = f1.d_denoms;
  dens.insert(dens.end(), fc.d_denoms.begin(), fc.d_denoms.end());
  dens.insert(dens.end(), fb.d_denoms.begin(), fb.d_denoms.end());
  dens.insert(dens.end(), f4.d_denoms.begin(), f4.d_denoms.end());

  // The factors stack row blocks as (r, r2, r3, r4, h5, h6) while the input
  // orders them (r, r3, h5, r2, r4, h6); p6 turns the natural order into the
  // stacked one, so its transpose restores natural order on the left.
  // Columns stack as (r, r2, r3, r4, w5, w6) against the natural
  // (r, r2, w5, r3, r4, w6); right-multiplying by q6 sends stacked block i
  // straight to natural slot order[i]. The forms differ because with unequal
  // block sizes the transpose of a block permutation is not the block
  // permutation of the inverse order.
  const Matrix<Int> p6 =
      block_perm_matrix({r, r3, h5, r2, r4, h6}, {0, 3, 1, 4, 2, 5});
  const Matrix<Int> q6 =
      block_perm_matrix({r, r2, w5, r3, r4, w6}, {0, 1, 3, 4, 2, 5});
  const Matrix<Int> p_mat = compose(
      {block_diag<Int>({f1.P.to_matrix<Int>(), Matrix<Int>::identity(nb)}),
       block_diag<Int>({Matrix<Int>::identity(r), fb.P.to_matrix<Int>(),
                        fc.P.to_matrix<Int>()}),
       block_diag<Int>(
           {Matrix<Int>::identity(np + r2), f4.P.to_matrix<Int>()}),
       p6.transposed()});
  const Matrix<Int> q_mat = compose(
      {q6,
       block_diag<Int>(
           {Matrix<Int>::identity(np + r3), f4.Q.to_matrix<Int>()}),
       block_diag<Int>({Matrix<Int>::identity(r), fc.Q.to_matrix<Int>(),
                        fb.Q.to_matrix<Int>()}),
       block_diag<Int>({f1.Q.to_matrix<Int>(), Matrix<Int>::identity(mb)})});
  return finalize(a, p_mat, std::move(l_f), std::move(dens), std::move(u_f),
                  q_mat, counter);
}

EtdFactors etd_impl(const Matrix<Int>& a, OpCounter& counter) {
  const int n = a.rows(), m = a.cols();
  if (a.is_zero()) return trivial_factors(n, m);
  if (n == 1 && m == 1) {
    EtdFactors f;
    f.P = Permutation::identity(1);
    f.Q = Permutation::identity(1);
    f.L = Matrix<Int>{{a(0, 0)}};
    f.U = Matrix<Int>{{a(0, 0)}};
    f.d_denoms = {a(0, 0)};
    f.rank = 1;
    counter.base_case_muls += 1;
    return f;
  }
  if (n == 2 && m == 2) return base_2x2(a, counter);
  if (n == 1) return base_thin_row(a, counter);
  if (m == 1) return base_thin_col(a, counter);

  const int np = std::min((n + 1) / 2, std::min(n - 1, m - 1));
  const SplitParts<Int> parts = split(a, np, np);
  const EtdFactors f1 = etd_impl(parts.a, counter);
  if (f1.rank == np)
    return case_full_rank(a, f1, parts.b, parts.c, parts.d, counter);
  const Case2Prep p2 = prepare_case2(f1, parts.b, parts.c, parts.d, counter);
  if (p2.b1.is_zero() && p2.c1.is_zero())
    return case_zero_borders(a, f1, p2, counter);
  return case_general(a, f1, p2, counter);
}

EtdFactors etd_rational_impl(const Matrix<Rat>& x, OpCounter& counter) {
  Int ell(1);
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      ell = RingTraits<Int>::lcm(ell, x(i, j).den());
  Matrix<Int> y(x.rows(), x.cols());
  if (ell == 1) {
    y = to_ring(x);
  } else {
    const Rat scale{ell};
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < x.cols(); ++j)
        y(i, j) = mul(x(i, j), scale, counter).to_ring();
  }
  EtdFactors f = etd_impl(y, counter);
  if (ell != 1)
    for (Int& d : f.d_denoms) d = mul(d, ell, counter);
  return f;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

bool fail(std::string* why, const std::string& reason) {
  if (why) *why = reason;
  return false;
}

bool conjugates_triangular(const EtdFactors& f, const Matrix<Int>& l,
                           const Matrix<Int>& u, std::string* why,
                           const std::string& tag) {
  const Matrix<Int> plp =
      apply_perm(f.P, apply_perm(f.P.inverse(), l, Side::Right), Side::Left);
  if (!is_lower_triangular(plp))
    return fail(why, tag + "P*L*Pt is not lower triangular");
  const Matrix<Int> quq =
      apply_perm(f.Q.inverse(), apply_perm(f.Q, u, Side::Right), Side::Left);
  if (!is_upper_triangular(quq))
    return fail(why, tag + "Qt*U*Q is not upper triangular");
  return true;
}

bool structure_ok(const Matrix<Rat>& a, const EtdFactors& f, std::string* why) {
  const int n = a.rows(), m = a.cols(), r = f.rank;
  if (f.P.size() != n || f.Q.size() != m || f.L.rows() != n ||
      f.L.cols() != n || f.U.rows() != m || f.U.cols() != m)
    throw DimensionMismatch("factor shapes do not conform to the matrix");
  if (r < 0 || r > std::min(n, m)) return fail(why, "rank out of range");
  if (static_cast<int>(f.d_denoms.size()) != r)
    return fail(why, "denominator count differs from rank");
  for (const Int& d : f.d_denoms)
    if (d == 0) return fail(why, "zero diagonal denominator");
  if (!is_lower_triangular(f.L)) return fail(why, "L is not lower triangular");
  if (!is_upper_triangular(f.U)) return fail(why, "U is not upper triangular");
  for (int i = 0; i < n; ++i)
    if (f.L(i, i) == 0) return fail(why, "L has a zero diagonal entry");
  for (int j = 0; j < m; ++j)
    if (f.U(j, j) == 0) return fail(why, "U has a zero diagonal entry");
  if (f.L.block(r, r, n - r, n - r) != Matrix<Int>::identity(n - r))
    return fail(why, "trailing block of L is not the identity");
  if (f.U.block(r, r, m - r, m - r) != Matrix<Int>::identity(m - r))
    return fail(why, "trailing block of U is not the identity");
  if (!conjugates_triangular(f, f.L, f.U, why, "")) return false;

  // The permutations must keep the trailing (below/right of the rank) rows
  // and columns in their original relative order; this is exactly what makes
  // conjugated triangularity independent of the trailing identity blocks.
  {
    int last = -1;
    for (int i = 0; i < n; ++i) {
      const int img = f.P(i);
      if (img < r) continue;
      if (img <= last)
        return fail(why, "P reorders the rows beyond the rank");
      last = img;
    }
    last = -1;
    for (int s = r; s < m; ++s) {
      const int img = f.Q(s);
      if (img <= last)
        return fail(why, "Q reorders the columns beyond the rank");
      last = img;
    }
  }

  // Conjugated triangularity must be a property of the permutations alone:
  // it has to survive arbitrary triangular replacements of the trailing
  // identity blocks.
  std::mt19937 rng(0x5eedu);
  std::uniform_int_distribution<int> off(-3, 3);
  std::uniform_int_distribution<int> diag(1, 3);
  for (int trial = 0; trial < 2; ++trial) {
    Matrix<Int> l2 = f.L;
    for (int i = r; i < n; ++i) {
      l2(i, i) = diag(rng);
      for (int j = r; j < i; ++j) l2(i, j) = off(rng);
    }
    Matrix<Int> u2 = f.U;
    for (int i = r; i < m; ++i) {
      u2(i, i) = diag(rng);
      for (int j = i + 1; j < m; ++j) u2(i, j) = off(rng);
    }
    if (!conjugates_triangular(f, l2, u2, why,
                               "after replacing the identity blocks, "))
      return false;
  }

  OpCounter scratch;
  const Matrix<Rat> recon = apply_perm(
      f.P,
      mat_mul(to_field(f.L),
              mat_mul(d_rectangular(f),
                      apply_perm(f.Q, to_field(f.U), Side::Right), scratch),
              scratch),
      Side::Left);
  if (!(recon == a)) return fail(why, "P*L*D*U*Q does not reconstruct the matrix");
  return true;
}

}  // namespace

EtdFactors etd(const Matrix<Int>& a, OpCounter& counter) {
  return etd_impl(a, counter);
}

EtdFactors etd_rational(const Matrix<Rat>& a, OpCounter& counter) {
  return etd_rational_impl(a, counter);
}

Matrix<Rat> d_rectangular(const EtdFactors& f) {
  Matrix<Rat> d(f.L.rows(), f.U.rows());
  for (int i = 0; i < f.rank; ++i)
    d(i, i) = Rat(Int(1), f.d_denoms[static_cast<std::size_t>(i)]);
  return d;
}

Matrix<Int> reconstruct_etd(const EtdFactors& f) {
  OpCounter scratch;
  const Matrix<Rat> recon = apply_perm(
      f.P,
      mat_mul(to_field(f.L),
              mat_mul(d_rectangular(f),
                      apply_perm(f.Q, to_field(f.U), Side::Right), scratch),
              scratch),
      Side::Left);
  return to_ring(recon);
}

bool verify_etd(const Matrix<Int>& a, const EtdFactors& f, std::string* why) {
  return structure_ok(to_field(a), f, why);
}

bool verify_etd(const Matrix<Rat>& a, const EtdFactors& f, std::string* why) {
  return structure_ok(a, f, why);
}

LduGrouping etd_to_ldu_grouping(const EtdFactors& f) {
  LduGrouping g;
  g.lower =
      apply_perm(f.P, apply_perm(f.P.inverse(), f.L, Side::Right), Side::Left);
  g.middle = apply_perm(
      f.P, apply_perm(f.Q, d_rectangular(f), Side::Right), Side::Left);
  g.upper = apply_perm(f.Q.inverse(), apply_perm(f.Q, f.U, Side::Right),
                       Side::Left);
  return g;
}

}  // namespace bruhat
