#pragma once

#include <vector>

#include "bruhat/matrix.hpp"

/// Brute-force minor computations. Everything here is deliberately naive and
/// independent of the fast decompositions: it is the oracle the fast paths
/// are tested against. Oracle routines never touch a caller's OpCounter.
namespace bruhat {

/// Selects the bordered minor of order `k` whose last row is row `i` and
/// last column is column `j` (0-based): the determinant of the submatrix on
/// rows {0..k-2, i} and columns {0..k-2, j}. For i or j below k-1 the row or
/// column list repeats an index and the determinant is zero, which is exactly
/// the convention the minor identities rely on.
struct MinorSpec {
  int k;  ///< order of the minor, k >= 1
  int i;  ///< 0-based final row index
  int j;  ///< 0-based final column index
};

/// Determinant oracle: cofactor expansion up to order 6, fraction-free
/// elimination beyond.
Int oracle_det(const Matrix<Int>& a);

/// Rank oracle: fraction-free elimination with full pivoting.
int oracle_rank(const Matrix<Int>& a);

/// The bordered minor described by `spec`.
Int alpha_minor(const Matrix<Int>& a, const MinorSpec& spec);

/// Leading principal minor of order k (k = 0 gives 1).
Int leading_minor(const Matrix<Int>& a, int k);

/// All leading principal minors of orders 1..min(rows, cols).
std::vector<Int> leading_minors(const Matrix<Int>& a);

/// True iff a is square and every leading principal minor of order 1..n is
/// nonzero (the fully generic profile required by the plain LDU path).
bool has_generic_profile(const Matrix<Int>& a);

/// The matrix of bordered minors of order k+1 indexed by final row/column
/// positions k..s-1: values(r, c) is the minor of order k+1 with final row
/// k+r and final column k+c.
struct MinorsMatrix {
  int k = 0;           ///< border order: entries are minors of order k+1
  int s = 0;           ///< exclusive end of the index window
  Matrix<Int> values;  ///< (s-k) x (s-k)
};

/// Builds the minors window for 0 <= k < s <= min(rows, cols).
MinorsMatrix minors_matrix(const Matrix<Int>& a, int k, int s);

/// Determinant of the leading k x k block with column i (i < k) replaced by
/// the first k entries of column j. For i == j this is the leading minor of
/// order k.
Int delta_minor(const Matrix<Int>& a, int k, int i, int j);

/// Checks the determinant identity tying the minors window to the leading
/// minors: det(minors_matrix(a, k, s).values) == alpha^s * (alpha^k)^(s-k-1),
/// with alpha^t the leading minor of order t and 0^0 = 1.
bool check_sylvester(const Matrix<Int>& a, int k, int s);

/// Checks the bordered-minor expansion identity for a square matrix
/// (0-based i, j; orders 0 <= k < s <= n):
///   alpha^s * m(k+1, i, j) - alpha^k * m(s+1, i, j)
///     == sum over p in [k, s) of m(k+1, i, p) * delta_minor(a, s, p, j)
/// where m(order, r, c) is the bordered minor and a minor whose order exceeds
/// n is zero.
bool check_base_minor_identity(const Matrix<Int>& a, int i, int j, int k,
                               int s);

/// Checks, using only oracle minors, that the rows of the upper factor
/// satisfy the block relation
///   alpha^s * U[0..s-1, s..n-1] == U[0..s-1, 0..s-1] * G
/// where U(r, c) = m(r+1, r, c) and G(p, c) = delta_minor(a, s, p, c+s).
bool check_minor_u_identity(const Matrix<Int>& a, int s);

}  // namespace bruhat
