#include "bruhat/complexity.hpp"

namespace bruhat {

bool is_power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

long long recurrence_t(int n) {
  if (!is_power_of_two(n))
    throw InvalidSize("cost recurrence is defined for powers of two >= 2");
  long long t = 7;
  for (long long m = 4; m <= n; m *= 2) {
    const long long half = m / 2;
    t = 2 * t + 7 * half * half * half;
  }
  return t;
}

double closed_form_estimate(int n) {
  const double nn = n;
  return 7.0 * (nn * nn * nn - 4.0 * nn) / 6.0 + 7.0 * nn / 4.0;
}

CountReport measure_ldu(const Matrix<Int>& a) {
  if (a.rows() != a.cols() || !is_power_of_two(a.rows()))
    throw InvalidSize("measurement needs a square power-of-two matrix");
  OpCounter counter;
  std::vector<LduNodeStats> stats;
  ldu_full(a, counter, default_split, &stats);
  for (const LduNodeStats& node : stats) {
    const bool leaf = node.n - node.k <= 2;
    const int want_products = leaf ? 0 : 7;
    const int want_calls = leaf ? 0 : 2;
    if (node.products != want_products || node.child_calls != want_calls)
      throw Error("recursion node [" + std::to_string(node.k) + ", " +
                  std::to_string(node.n) + ") performed " +
                  std::to_string(node.products) + " block products and " +
                  std::to_string(node.child_calls) +
                  " recursive calls; expected " +
                  std::to_string(want_products) + " and " +
                  std::to_string(want_calls));
  }
  CountReport report;
  report.n = a.rows();
  report.block_products = counter.block_product_count;
  report.ring_muls_in_blocks = counter.ring_muls_in_blocks;
  report.base_case_muls = counter.base_case_muls;
  report.expected_t = recurrence_t(a.rows());
  return report;
}

}  // namespace bruhat
