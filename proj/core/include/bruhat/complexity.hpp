#pragma once

#include "bruhat/ldu.hpp"
#include "bruhat/matrix.hpp"

namespace bruhat {

/// Multiplicative-operation report for one full LDU run.
struct CountReport {
  int n = 0;                         ///< matrix size
  long long block_products = 0;      ///< full matrix-by-matrix products
  long long ring_muls_in_blocks = 0; ///< scalar multiplications inside them
  long long base_case_muls = 0;      ///< multiplicative ops in the base cases
  long long expected_t = 0;          ///< cost-recurrence prediction for n
};

/// True iff n is 2^k with k >= 1.
bool is_power_of_two(int n);

/// Cost recurrence t(2) = 7, t(n) = 2 t(n/2) + 7 (n/2)^3.
/// @throws InvalidSize unless n is a power of two >= 2.
long long recurrence_t(int n);

/// Informational closed-form estimate 7 (n^3 - 4n) / 6 + 7n / 4 of the same
/// cost. Known to disagree with the recurrence (63 vs 70 at n = 4); the
/// recurrence is the normative count, this estimate is reported for
/// comparison only.
double closed_form_estimate(int n);

/// Runs the full decomposition on `a` with a fresh counter and reports the
/// measured multiplicative work next to the recurrence prediction. Audits the
/// recursion shape: every internal node must perform exactly 7 block
/// products and 2 recursive calls, every leaf none.
/// @throws InvalidSize unless `a` is square with power-of-two size.
/// @throws ZeroPivotMinor when `a` does not have a fully generic profile.
CountReport measure_ldu(const Matrix<Int>& a);

}  // namespace bruhat
