#include "bruhat/ldu.hpp"

#include <random>
#include <vector>

#include "doctest.h"
#include "test_support.hpp"

using namespace bruhat;
using test_support::golden4;
using test_support::random_generic;

namespace {

void check_against_minors(const Matrix<Int>& a, const LduFactors& f) {
  const int n = a.rows();
  REQUIRE(f.k == 0);
  REQUIRE(f.n == n);
  for (int t = 0; t < n; ++t)
    CHECK(f.alphas[static_cast<std::size_t>(t)] == leading_minor(a, t + 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CHECK(f.L(i, j) == alpha_minor(a, MinorSpec{j + 1, i, j}));
      CHECK(f.U(i, j) == alpha_minor(a, MinorSpec{i + 1, i, j}));
    }
}

}  // namespace

TEST_SUITE("ldu") {

TEST_CASE("order one") {
  OpCounter c;
  const LduFactors f = ldu_full(Matrix<Int>{{5}}, c);
  CHECK(f.L == Matrix<Int>{{5}});
  CHECK(f.U == Matrix<Int>{{5}});
  CHECK(f.alphas == std::vector<Int>{5});
  CHECK(f.d_scales.size() == 1);
  CHECK(f.d_scales[0] == Rat(Int(1), Int(5)));
  CHECK(f.M == Matrix<Int>{{1}});
  CHECK(f.W == Matrix<Int>{{1}});
  CHECK(c.base_case_muls == 2);
  CHECK(c.block_product_count == 0);
  CHECK(reconstruct_ldu(f) == Matrix<Int>{{5}});
}

TEST_CASE("frozen 2x2") {
  OpCounter c;
  const Matrix<Int> a{{1, 2}, {3, 4}};
  const LduFactors f = ldu_full(a, c);
  CHECK(f.L == Matrix<Int>{{1, 0}, {3, -2}});
  CHECK(f.U == Matrix<Int>{{1, 2}, {0, -2}});
  CHECK(f.alphas == std::vector<Int>{1, -2});
  CHECK(f.d_scales == std::vector<Rat>{Rat(Int(1)), Rat(Int(1), Int(-2))});
  CHECK(c.base_case_muls == 7);
  CHECK(c.block_product_count == 0);
  CHECK(check_ldu_product(minors_matrix(a, 0, 2), f));
  CHECK(check_mw_identities(f));
  CHECK(reconstruct_ldu(f) == a);
}

TEST_CASE("frozen upper triangular 2x2") {
  OpCounter c;
  const Matrix<Int> a{{2, 3}, {0, 1}};
  const LduFactors f = ldu_full(a, c);
  CHECK(f.L == Matrix<Int>{{2, 0}, {0, 2}});
  CHECK(f.U == Matrix<Int>{{2, 3}, {0, 2}});
  CHECK(f.alphas == std::vector<Int>{2, 2});
  CHECK(f.d_scales ==
        std::vector<Rat>{Rat(Int(1), Int(2)), Rat(Int(1), Int(4))});
  CHECK(reconstruct_ldu(f) == a);
  CHECK(check_mw_identities(f));
}

TEST_CASE("vanishing pivot minors are reported by order") {
  OpCounter c;
  CHECK_THROWS_AS(ldu_full(Matrix<Int>{{0, 1}, {1, 0}}, c), ZeroPivotMinor);
  try {
    ldu_full(test_support::flipped_golden4(), c);
    FAIL("expected a vanishing pivot");
  } catch (const ZeroPivotMinor& e) {
    CHECK(e.index() == 3);
    CHECK(std::string(e.what()).find("ZeroPivotMinor(3)") == 0);
  }
}

TEST_CASE("golden 4x4 equals the minors oracle") {
  OpCounter c;
  const Matrix<Int> a = golden4();
  const LduFactors f = ldu_full(a, c);
  check_against_minors(a, f);
  CHECK(f.alphas == std::vector<Int>{1, 21, 12, 60});
  CHECK(check_ldu_product(minors_matrix(a, 0, 4), f));
  CHECK(check_mw_identities(f));
  CHECK(reconstruct_ldu(f) == a);
}

TEST_CASE("random generic matrices match the oracle") {
  std::mt19937 rng(101u);
  for (int t = 0; t < 12; ++t) {
    const int n = 2 + (t % 7);
    const Matrix<Int> a = random_generic(rng, n, -9, 9);
    CAPTURE(t);
    CAPTURE(n);
    OpCounter c;
    const LduFactors f = ldu_full(a, c);
    check_against_minors(a, f);
    CHECK(check_mw_identities(f));
    CHECK(reconstruct_ldu(f) == a);
  }
}

TEST_CASE("factors are independent of the split policy") {
  std::mt19937 rng(103u);
  const SplitChooser left = [](int k, int) { return k + 1; };
  const SplitChooser right = [](int, int n) { return n - 1; };
  for (int n : {5, 6, 7}) {
    const Matrix<Int> a = random_generic(rng, n, -9, 9);
    OpCounter c1, c2, c3;
    const LduFactors fd = ldu_full(a, c1);
    const LduFactors fl = ldu_full(a, c2, left, nullptr);
    const LduFactors fr = ldu_full(a, c3, right, nullptr);
    CHECK(fd.L == fl.L);
    CHECK(fd.U == fl.U);
    CHECK(fd.M == fl.M);
    CHECK(fd.W == fl.W);
    CHECK(fd.alphas == fl.alphas);
    CHECK(fd.d_scales == fl.d_scales);
    CHECK(fd.L == fr.L);
    CHECK(fd.U == fr.U);
    CHECK(fd.M == fr.M);
    CHECK(fd.W == fr.W);
    CHECK(fd.alphas == fr.alphas);
    CHECK(fd.d_scales == fr.d_scales);
  }
}

TEST_CASE("recursion audit: seven products and two calls per internal node") {
  std::mt19937 rng(107u);
  const Matrix<Int> a = random_generic(rng, 8, -9, 9);
  OpCounter c;
  std::vector<LduNodeStats> stats;
  const LduFactors f = ldu_full(a, c, default_split, &stats);
  CHECK(reconstruct_ldu(f) == a);
  int internal = 0, leaves = 0;
  for (const LduNodeStats& s : stats) {
    if (s.n - s.k > 2) {
      ++internal;
      CHECK(s.products == 7);
      CHECK(s.child_calls == 2);
    } else {
      ++leaves;
      CHECK(s.products == 0);
      CHECK(s.child_calls == 0);
    }
  }
  CHECK(internal == 3);  // 8 -> two 4-windows -> four 2-leaves
  CHECK(leaves == 4);
}

TEST_CASE("windows with nonzero base order") {
  const Matrix<Int> a = golden4();
  const MinorsMatrix w = minors_matrix(a, 1, 4);
  OpCounter c;
  const LduFactors f = ldu_rec(w, leading_minor(a, 1), c);
  CHECK(f.k == 1);
  CHECK(f.n == 4);
  CHECK(f.alphas == std::vector<Int>{21, 12, 60});
  CHECK(check_ldu_product(w, f));
  CHECK(check_mw_identities(f));
}

}  // TEST_SUITE
