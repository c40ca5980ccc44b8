#include "bruhat/ldu.hpp"

namespace bruhat {

namespace {

// Block product charged to the recursion's operation budget: besides the
// generic counters it accumulates r*k*c into ring_muls_in_blocks.
template <class T>
Matrix<T> counted_product(const Matrix<T>& a, const Matrix<T>& b,
                          OpCounter& counter) {
  counter.ring_muls_in_blocks += 1LL * a.rows() * a.cols() * b.cols();
  return mat_mul(a, b, counter);
}

// Entrywise exact division by a scalar.
Matrix<Int> div_all(const Matrix<Int>& a, const Int& d, OpCounter& counter) {
  Matrix<Int> out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out(i, j) = exact_div(a(i, j), d, counter);
  return out;
}

LduFactors base_one(const MinorsMatrix& w, const Int& alpha_k,
                    OpCounter& counter) {
  const Int& a = w.values(0, 0);
  if (sgn(a) == 0) throw ZeroPivotMinor(w.k + 1);
  Int lambda = mul(alpha_k, a, counter);
  Rat sigma = make_scale(alpha_k, lambda, counter);
  counter.base_case_muls += 2;
  LduFactors f;
  f.k = w.k;
  f.n = w.s;
  f.alpha_k = alpha_k;
  f.L = Matrix<Int>{{a}};
  f.U = Matrix<Int>{{a}};
  f.M = Matrix<Int>{{alpha_k}};
  f.W = Matrix<Int>{{alpha_k}};
  f.alphas = {a};
  f.d_scales = {sigma};
  return f;
}

LduFactors base_two(const MinorsMatrix& w, const Int& alpha_k,
                    OpCounter& counter) {
  const Int& a11 = w.values(0, 0);
  const Int& b = w.values(0, 1);
  const Int& c = w.values(1, 0);
  const Int& d = w.values(1, 1);
  if (sgn(a11) == 0) throw ZeroPivotMinor(w.k + 1);
  // Seven counted operations: two entry products, the exact division that
  // produces the next pivot, two consecutive-pivot products, and the two
  // divisions that form the diagonal scales.
  Int t1 = mul(a11, d, counter);
  Int t2 = mul(b, c, counter);
  Int alpha_n = exact_div(Int(t1 - t2), alpha_k, counter);
  if (sgn(alpha_n) == 0) throw ZeroPivotMinor(w.k + 2);
  Int lam1 = mul(alpha_k, a11, counter);
  Int lam2 = mul(a11, alpha_n, counter);
  Rat sig1 = make_scale(alpha_k, lam1, counter);
  Rat sig2 = make_scale(alpha_k, lam2, counter);
  counter.base_case_muls += 7;
  LduFactors f;
  f.k = w.k;
  f.n = w.s;
  f.alpha_k = alpha_k;
  f.L = Matrix<Int>{{a11, Int(0)}, {c, alpha_n}};
  f.U = Matrix<Int>{{a11, b}, {Int(0), alpha_n}};
  f.M = Matrix<Int>{{alpha_k, Int(0)}, {-c, a11}};
  f.W = Matrix<Int>{{alpha_k, -b}, {Int(0), a11}};
  f.alphas = {a11, alpha_n};
  f.d_scales = {sig1, sig2};
  return f;
}

LduFactors ldu_node(const MinorsMatrix& w, const Int& alpha_k,
                    OpCounter& counter, const SplitChooser& chooser,
                    std::vector<LduNodeStats>* stats) {
  if (w.values.rows() != w.values.cols() ||
      w.values.rows() != w.s - w.k)
    throw DimensionMismatch("minors window shape disagrees with its orders");
  const int size = w.s - w.k;
  if (size <= 0) throw InvalidSize("empty minors window");

  if (size <= 2) {
    LduFactors f = size == 1 ? base_one(w, alpha_k, counter)
                             : base_two(w, alpha_k, counter);
    if (stats) stats->push_back(LduNodeStats{w.k, w.s, 0, 0, 0});
    return f;
  }

  const int s_mid = chooser(w.k, w.s);
  if (s_mid <= w.k || s_mid >= w.s)
    throw InvalidSize("split point outside the open window");
  const int h = s_mid - w.k;
  const int q = size - h;

  SplitParts<Int> parts = split(w.values, h, h);

  int node_products = 0;
  int child_calls = 0;
  auto product = [&](const auto& x, const auto& y) {
    ++node_products;
    return counted_product(x, y, counter);
  };

  ++child_calls;
  LduFactors f1 =
      ldu_node(MinorsMatrix{w.k, s_mid, parts.a}, alpha_k, counter, chooser,
               stats);
  const Int alpha_s = f1.alphas.back();

  // Off-diagonal strips: M1 * B and C * W1 equal alpha_k times the strips of
  // U and L, so the divisions are exact.
  Matrix<Int> u_strip = div_all(product(f1.M, parts.b), alpha_k, counter);
  Matrix<Int> l_strip = div_all(product(parts.c, f1.W), alpha_k, counter);

  // Trailing window alpha_s * (D - L~ D1 U~) / alpha_k. The product runs in
  // the fraction field; the scaled difference is integral (it is alpha_k
  // times the trailing minors window), so the projection and division are
  // exact.
  Matrix<Rat> du = apply_row_scales(to_field(u_strip), f1.d_scales, counter);
  Matrix<Rat> p3 = product(to_field(l_strip), du);
  Matrix<Rat> x = scale_matrix(to_field(parts.d) - p3, Rat(alpha_s), counter);
  Matrix<Int> next_window = div_all(to_ring(x), alpha_k, counter);

  ++child_calls;
  LduFactors f2 = ldu_node(MinorsMatrix{s_mid, w.s, next_window}, alpha_s,
                           counter, chooser, stats);

  // M bottom-left block: -(M2 * L~) * D1 * M1 / alpha_k.
  Matrix<Int> p4 = product(f2.M, l_strip);
  Matrix<Rat> p5 =
      product(apply_col_scales(to_field(p4), f1.d_scales, counter),
              to_field(f1.M));
  Matrix<Int> m_block = -div_all(to_ring(p5), alpha_k, counter);

  // W top-right block: -(W1 * D1) * U~ * W2 / alpha_k.
  Matrix<Rat> p6 =
      product(apply_col_scales(to_field(f1.W), f1.d_scales, counter),
              to_field(u_strip));
  Matrix<Rat> p7 = product(p6, to_field(f2.W));
  Matrix<Int> w_block = -div_all(to_ring(p7), alpha_k, counter);

  LduFactors f;
  f.k = w.k;
  f.n = w.s;
  f.alpha_k = alpha_k;
  f.L = assemble_blocks<Int>(
      {{f1.L, Matrix<Int>::zero(h, q)}, {l_strip, f2.L}});
  f.U = assemble_blocks<Int>(
      {{f1.U, u_strip}, {Matrix<Int>::zero(q, h), f2.U}});
  f.M = assemble_blocks<Int>(
      {{f1.M, Matrix<Int>::zero(h, q)}, {m_block, f2.M}});
  f.W = assemble_blocks<Int>(
      {{f1.W, w_block}, {Matrix<Int>::zero(q, h), f2.W}});
  f.alphas = f1.alphas;
  f.alphas.insert(f.alphas.end(), f2.alphas.begin(), f2.alphas.end());
  f.d_scales = f1.d_scales;
  // The tail factors were produced relative to alpha_s; rescaling their
  // diagonal by alpha_k / alpha_s re-bases it to this window's pivot.
  const Rat rebase = frac_normalize(alpha_k, alpha_s);
  for (const Rat& sc : f2.d_scales)
    f.d_scales.push_back(mul(sc, rebase, counter));

  if (stats)
    stats->push_back(LduNodeStats{w.k, w.s, s_mid, node_products, child_calls});
  return f;
}

}  // namespace

int default_split(int k, int n) { return k + (n - k + 1) / 2; }

LduFactors ldu_rec(const MinorsMatrix& window, const Int& alpha_k,
                   OpCounter& counter) {
  return ldu_rec(window, alpha_k, counter, default_split, nullptr);
}

LduFactors ldu_rec(const MinorsMatrix& window, const Int& alpha_k,
                   OpCounter& counter, const SplitChooser& chooser,
                   std::vector<LduNodeStats>* stats) {
  if (!chooser) throw InvalidSize("missing split chooser");
  return ldu_node(window, alpha_k, counter, chooser, stats);
}

LduFactors ldu_full(const Matrix<Int>& a, OpCounter& counter) {
  return ldu_full(a, counter, default_split, nullptr);
}

LduFactors ldu_full(const Matrix<Int>& a, OpCounter& counter,
                    const SplitChooser& chooser,
                    std::vector<LduNodeStats>* stats) {
  if (a.rows() == 0 || a.rows() != a.cols())
    throw InvalidSize("full decomposition needs a nonempty square matrix");
  return ldu_rec(MinorsMatrix{0, a.rows(), a}, Int(1), counter, chooser,
                 stats);
}

Matrix<Rat> d_matrix(const LduFactors& f) { return diagonal_matrix(f.d_scales); }

Matrix<Int> reconstruct_ldu(const LduFactors& f) {
  OpCounter scratch;
  Matrix<Rat> ld = apply_col_scales(to_field(f.L), f.d_scales, scratch);
  return to_ring(mat_mul(ld, to_field(f.U), scratch));
}

bool check_ldu_product(const MinorsMatrix& window, const LduFactors& f) {
  try {
    return reconstruct_ldu(f) == window.values;
  } catch (const InexactDivision&) {
    return false;
  }
}

bool check_mw_identities(const LduFactors& f) {
  OpCounter scratch;
  const int n = f.L.rows();
  Matrix<Rat> target(n, n);
  for (int i = 0; i < n; ++i) target(i, i) = Rat(f.alpha_k);
  Matrix<Rat> ld = apply_col_scales(to_field(f.L), f.d_scales, scratch);
  Matrix<Rat> du = apply_row_scales(to_field(f.U), f.d_scales, scratch);
  return mat_mul(to_field(f.M), ld, scratch) == target &&
         mat_mul(du, to_field(f.W), scratch) == target;
}

}  // namespace bruhat
