#pragma once

#include <string>
#include <vector>

#include "bruhat/matrix.hpp"

/// Exact triangular decomposition of an arbitrary rectangular matrix over a
/// commutative domain:
///
///     A = P * L * D * U * Q
///
/// with permutations P, Q; L lower triangular and U upper triangular, both
/// nonsingular with entries in the ring; and D a rectangular diagonal whose
/// leading `rank` entries are the inverses 1/d_i of nonzero ring elements
/// (the remaining diagonal is zero). The factorization is total: it exists
/// for every matrix, including rank-deficient and non-square ones.
namespace bruhat {

/// Result of an exact triangular decomposition of an N x M matrix.
///
/// Structural guarantees beyond the reconstruction identity:
///   - L (N x N) and P*L*Pt are lower triangular; U (M x M) and Qt*U*Q are
///     upper triangular; all diagonal entries are nonzero.
///   - Trailing-identity shape: the bottom-right (N-rank) block of L and the
///     (M-rank) block of U are exact identity blocks, so
///     L = [[L1, 0], [L2, I]] and U = [[U1, U2], [0, I]].
///   - Replacing those identity blocks by arbitrary triangular blocks keeps
///     P*L*Pt lower and Qt*U*Q upper triangular (the permutations never mix
///     the trailing block above/left of the leading one).
struct EtdFactors {
  Permutation P;              ///< row permutation (size N)
  Permutation Q;              ///< column permutation (size M)
  Matrix<Int> L;              ///< N x N nonsingular lower triangular
  Matrix<Int> U;              ///< M x M nonsingular upper triangular
  std::vector<Int> d_denoms;  ///< d_1..d_rank, all nonzero; D(i,i) = 1/d_i
  int rank = 0;               ///< rank of the decomposed matrix
};

/// True when the environment variable BRUHAT_DEBUG_ASSERTS is set to "1"
/// (read once per process). Enables the per-level internal audits in the
/// decompositions that compute over the fraction field.
bool debug_asserts_enabled();

/// Decomposes any integer matrix (any shape, any rank, including zero and
/// zero-dimension matrices). Total: never throws for in-domain input; an
/// InexactDivision escaping this call indicates an internal error. With the
/// environment variable BRUHAT_DEBUG_ASSERTS=1 every recursion level
/// re-validates triangularity, block shapes, and exact reconstruction of its
/// own subproblem, throwing Error on the first violation.
EtdFactors etd(const Matrix<Int>& a, OpCounter& counter);

/// Decomposes a matrix with fraction entries by clearing the least common
/// multiple of all denominators, decomposing the scaled integer matrix, and
/// folding the clearing factor back into the diagonal denominators.
EtdFactors etd_rational(const Matrix<Rat>& a, OpCounter& counter);

/// The rectangular diagonal factor: an N x M matrix with 1/d_i at (i, i) for
/// i < rank and zeros elsewhere.
Matrix<Rat> d_rectangular(const EtdFactors& f);

/// Recomputes P*L*D*U*Q exactly over the fraction field and projects it back
/// to the ring (always exact for factors produced by `etd`).
Matrix<Int> reconstruct_etd(const EtdFactors& f);

/// Full audit of the factor contract: shape conformance (DimensionMismatch on
/// nonconforming sizes), nonzero denominators, triangularity of L, U and of
/// their P/Q conjugates, the trailing-identity block shapes, stability of the
/// conjugate triangularity under two fixed-seed random replacements of the
/// identity blocks by arbitrary triangular blocks, and exact reconstruction
/// of `a`. On failure, stores a one-line reason in *why when provided.
bool verify_etd(const Matrix<Int>& a, const EtdFactors& f,
                std::string* why = nullptr);
bool verify_etd(const Matrix<Rat>& a, const EtdFactors& f,
                std::string* why = nullptr);

/// The associated triangular grouping of the same factorization:
/// lower = P*L*Pt (lower triangular over the ring), middle = P*D*Q (a scaled
/// partial permutation over the fraction field), upper = Qt*U*Q (upper
/// triangular over the ring); lower * middle * upper reconstructs the input.
struct LduGrouping {
  Matrix<Int> lower;
  Matrix<Rat> middle;
  Matrix<Int> upper;
};
LduGrouping etd_to_ldu_grouping(const EtdFactors& f);

}  // namespace bruhat
