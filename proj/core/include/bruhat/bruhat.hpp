#pragma once

#include <string>
#include <vector>

#include "bruhat/etd.hpp"
#include "bruhat/ldu.hpp"
#include "bruhat/matrix.hpp"

/// Bruhat decompositions A = V * w * U where V and U are upper triangular
/// over the ring and w is a scaled (partial) permutation over the fraction
/// field. Two constructions are provided: a direct one for square matrices
/// whose order-reversed copy has fully generic rank profile, and a total one
/// that works for every matrix by routing through the exact triangular
/// decomposition.
namespace bruhat {

/// Factors of A = V * w * U for an n x m matrix of rank r.
///
/// The scaled permutation w is stored sparsely: the dense r x r matrix has
/// w_scales[k] at position (k, w_perm(k)) and zeros elsewhere. V is n x r and
/// upper trapezoidal (V(i,j) = 0 whenever i - j > n - r); U is r x m and
/// upper triangular (U(i,j) = 0 whenever j < i). In the square full-rank
/// case both are square upper triangular with nonzero diagonals.
struct BruhatFactors {
  Matrix<Int> V;             ///< n x rank, upper trapezoidal
  Permutation w_perm;        ///< size rank: column of the nonzero in row k
  std::vector<Rat> w_scales; ///< size rank: the nonzero entry of row k of w
  Matrix<Int> U;             ///< rank x m, upper triangular
  int rank = 0;
};

/// Direct construction for a square matrix whose order-reversed copy
/// B = flip * a has fully generic rank profile: factors B = L * D * U(B) and
/// returns V = flip * L * flip, w = flip * D, U = U(B). The w scales are then
/// exactly the inverses of the products of consecutive leading minors of B,
/// in anti-diagonal position. Throws ZeroPivotMinor (callers may fall back to
/// bruhat_general) when a leading minor of B vanishes, and InvalidSize unless
/// `a` is square and nonempty.
BruhatFactors bruhat_flip(const Matrix<Int>& a, OpCounter& counter);

/// Total construction for any matrix: decomposes flip * a by `etd`, regroups
/// the factors into triangular form, conjugates by the flip, compacts to the
/// occupied rows and columns of w, and normalizes signs so that nonnegative
/// diagonals are preferred (the identity matrix maps to V = w = U = I).
BruhatFactors bruhat_general(const Matrix<Int>& a, OpCounter& counter);

/// The dense rank x rank scaled permutation matrix w.
Matrix<Rat> w_dense(const BruhatFactors& f);

/// V * w * U over the fraction field, projected to the ring (exact for
/// factors produced by either constructor).
Matrix<Int> reconstruct_bruhat(const BruhatFactors& f);

/// Checks the Bruhat contract: conforming shapes (DimensionMismatch
/// otherwise), V upper trapezoidal, U upper triangular, w a scaled partial
/// permutation with nonzero scales, V * w * U = a exactly, and in the square
/// full-rank case nonzero diagonals of V and U. On failure, stores a
/// one-line reason in *why when provided.
bool verify_bruhat(const Matrix<Int>& a, const BruhatFactors& f,
                   std::string* why = nullptr);

}  // namespace bruhat
