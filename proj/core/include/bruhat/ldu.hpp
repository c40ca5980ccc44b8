#pragma once

#include <functional>
#include <vector>

#include "bruhat/matrix.hpp"
#include "bruhat/minors.hpp"

namespace bruhat {

/// Factors of the fraction-free LDU decomposition of a minors window.
///
/// For a window spanning orders (k, n] with entry pivot chain
/// alpha_k = a^k, a^{k+1}, ..., a^n, the factors satisfy (over the fraction
/// field, with D = diag(d_scales)):
///
///   window = L * D * U,
///   M * (L * D) = (L * D) * M = a^k * I,
///   (D * U) * W = W * (D * U) = a^k * I,
///
/// where L is lower triangular, U is upper triangular, and L, U, M, W all
/// have entries in the ring. d_scales[t] = a^k / (a^{k+t} * a^{k+t+1}),
/// so the diagonal is represented by scalar fractions and never stored as a
/// dense fraction matrix during the decomposition itself.
struct LduFactors {
  int k = 0;  ///< window start: factors describe minor orders (k, n]
  int n = 0;  ///< window end
  Matrix<Int> L;
  Matrix<Int> U;
  Matrix<Int> M;
  Matrix<Int> W;
  std::vector<Int> alphas;   ///< pivot chain a^{k+1}, ..., a^n
  Int alpha_k = 1;           ///< the incoming pivot a^k
  std::vector<Rat> d_scales; ///< diagonal of D, length n - k

  /// Window size n - k.
  int size() const { return n - k; }
};

/// Per-node audit record for the recursive decomposition.
struct LduNodeStats {
  int k = 0;            ///< window start of this node
  int n = 0;            ///< window end of this node
  int split = 0;        ///< chosen split point (0 for leaves)
  int products = 0;     ///< counted block products performed at this node
  int child_calls = 0;  ///< recursive calls made by this node
};

/// Chooses the split point s with k < s < n for a recursion node.
using SplitChooser = std::function<int(int k, int n)>;

/// Default split: ceiling midpoint of the window.
int default_split(int k, int n);

/// Decomposes a square window of bordered minors.
///
/// @param window  minors window; window.values(r, c) must be the order-
///                (window.k + 1) bordered minor with final row window.k + r
///                and final column window.k + c.
/// @param alpha_k the leading minor of order window.k (1 when k = 0).
/// @param counter receives all multiplicative-operation counts.
/// @throws ZeroPivotMinor if a pivot minor in the chain is zero; the carried
///         index is the global order of the vanishing minor.
LduFactors ldu_rec(const MinorsMatrix& window, const Int& alpha_k,
                   OpCounter& counter);

/// As above, with an explicit split policy and optional per-node audit trail.
LduFactors ldu_rec(const MinorsMatrix& window, const Int& alpha_k,
                   OpCounter& counter, const SplitChooser& chooser,
                   std::vector<LduNodeStats>* stats);

/// Decomposes a full square matrix: the order-1 minors window is the matrix
/// itself, with k = 0 and alpha_0 = 1, so A = L * D * U exactly.
LduFactors ldu_full(const Matrix<Int>& a, OpCounter& counter);

/// As above, with an explicit split policy and optional audit trail.
LduFactors ldu_full(const Matrix<Int>& a, OpCounter& counter,
                    const SplitChooser& chooser,
                    std::vector<LduNodeStats>* stats);

/// The diagonal factor as a dense fraction matrix (reconstruction only).
Matrix<Rat> d_matrix(const LduFactors& f);

/// Computes L * D * U and projects it back to the ring.
/// @throws InexactDivision if the product is not integral (would indicate
///         corrupted factors).
Matrix<Int> reconstruct_ldu(const LduFactors& f);

/// True when L * D * U reproduces the window the factors were computed from.
bool check_ldu_product(const MinorsMatrix& window, const LduFactors& f);

/// True when M * L * D = a^k I and D * U * W = a^k I hold over the fraction
/// field.
bool check_mw_identities(const LduFactors& f);

}  // namespace bruhat
