#include "bruhat/bruhat.hpp"

#include <random>
#include <string>
#include <vector>

#include "bruhat/minors.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace bruhat;
using test_support::golden4;
using test_support::random_low_rank;
using test_support::random_matrix;

namespace {

Matrix<Int> flipped(const Matrix<Int>& a) {
  return apply_perm(flip(a.rows()), a, Side::Left);
}

/// Resamples until the order-reversed copy has fully generic rank profile.
Matrix<Int> random_flip_generic(std::mt19937& rng, int n) {
  for (;;) {
    const Matrix<Int> a = random_matrix(rng, n, n, -9, 9);
    if (has_generic_profile(flipped(a))) return a;
  }
}

}  // namespace

TEST_SUITE("bruhat") {

TEST_CASE("frozen 2x2 via the direct path") {
  OpCounter c;
  const Matrix<Int> a{{0, 1}, {2, 3}};
  const BruhatFactors f = bruhat_flip(a, c);
  CHECK(f.rank == 2);
  CHECK(f.V == Matrix<Int>{{2, 0}, {0, 2}});
  CHECK(f.U == Matrix<Int>{{2, 3}, {0, 2}});
  CHECK(f.w_perm == Permutation({1, 0}));
  CHECK(f.w_scales ==
        std::vector<Rat>{Rat(Int(1), Int(4)), Rat(Int(1), Int(2))});
  CHECK(reconstruct_bruhat(f) == a);
  CHECK(verify_bruhat(a, f));
  // the dense w has the scale of row k at column w_perm(k)
  const Matrix<Rat> w = w_dense(f);
  CHECK(w(0, 1) == Rat(Int(1), Int(4)));
  CHECK(w(1, 0) == Rat(Int(1), Int(2)));
  CHECK(w(0, 0).is_zero());
}

TEST_CASE("direct path preconditions") {
  OpCounter c;
  CHECK_THROWS_AS(bruhat_flip(Matrix<Int>{{1, 2, 3}, {4, 5, 6}}, c),
                  InvalidSize);
  CHECK_THROWS_AS(bruhat_flip(Matrix<Int>(), c), InvalidSize);
  // order-reversed golden matrix has a vanishing order-3 minor
  try {
    bruhat_flip(golden4(), c);
    FAIL("expected a vanishing pivot");
  } catch (const ZeroPivotMinor& e) {
    CHECK(e.index() == 3);
  }
}

TEST_CASE("identity decomposes trivially") {
  OpCounter c;
  const Matrix<Int> id = Matrix<Int>::identity(3);
  const BruhatFactors f = bruhat_general(id, c);
  CHECK(f.rank == 3);
  CHECK(f.V == id);
  CHECK(f.U == id);
  CHECK(f.w_perm.is_identity());
  CHECK(f.w_scales == std::vector<Rat>(3, Rat(Int(1))));
  CHECK(verify_bruhat(id, f));
}

TEST_CASE("zero and rank-deficient inputs") {
  OpCounter c;
  const Matrix<Int> z = Matrix<Int>::zero(3, 4);
  const BruhatFactors f = bruhat_general(z, c);
  CHECK(f.rank == 0);
  CHECK(f.V.rows() == 3);
  CHECK(f.V.cols() == 0);
  CHECK(f.U.rows() == 0);
  CHECK(f.U.cols() == 4);
  CHECK(verify_bruhat(z, f));
  CHECK(reconstruct_bruhat(f) == z);

  std::mt19937 rng(401u);
  const Matrix<Int> low = random_low_rank(rng, 5, 4, 2);
  const BruhatFactors g = bruhat_general(low, c);
  CHECK(g.rank == oracle_rank(low));
  CHECK(verify_bruhat(low, g));
}

TEST_CASE("golden 4x4 via the general path") {
  OpCounter c;
  const Matrix<Int> a = golden4();
  const BruhatFactors f = bruhat_general(a, c);
  CHECK(f.rank == 4);
  std::string why;
  const bool ok = verify_bruhat(a, f, &why);
  CAPTURE(why);
  CHECK(ok);
  CHECK(reconstruct_bruhat(f) == a);
}

TEST_CASE("direct-path scales match the minor products") {
  std::mt19937 rng(409u);
  for (int t = 0; t < 15; ++t) {
    const int n = 2 + t % 5;
    const Matrix<Int> a = random_flip_generic(rng, n);
    const Matrix<Int> b = flipped(a);
    CAPTURE(t);
    OpCounter c;
    const BruhatFactors f = bruhat_flip(a, c);
    CHECK(verify_bruhat(a, f));
    CHECK(reconstruct_bruhat(f) == a);
    for (int i = 0; i < n; ++i) {
      // row i of w carries the inverse of the product of the two
      // consecutive leading minors of the order-reversed copy
      const Int prod = leading_minor(b, n - 1 - i) * leading_minor(b, n - i);
      CHECK(f.w_scales[static_cast<std::size_t>(i)] == Rat(Int(1), prod));
    }
  }
}

TEST_CASE("general path handles every square shape") {
  std::mt19937 rng(419u);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + t % 6;
    Matrix<Int> a = random_matrix(rng, n, n, -6, 6);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (std::uniform_int_distribution<int>(0, 9)(rng) < 4) a(i, j) = 0;
    CAPTURE(t);
    OpCounter c;
    const BruhatFactors f = bruhat_general(a, c);
    std::string why;
    const bool ok = verify_bruhat(a, f, &why);
    CAPTURE(why);
    CHECK(ok);
    CHECK(f.rank == oracle_rank(a));
  }
}

TEST_CASE("both paths agree on the reconstruction") {
  std::mt19937 rng(421u);
  for (int t = 0; t < 10; ++t) {
    const Matrix<Int> a = random_flip_generic(rng, 4);
    OpCounter c;
    const BruhatFactors direct = bruhat_flip(a, c);
    const BruhatFactors general = bruhat_general(a, c);
    CHECK(reconstruct_bruhat(direct) == a);
    CHECK(reconstruct_bruhat(general) == a);
    CHECK(direct.rank == general.rank);
  }
}

TEST_CASE("verification rejects tampered factors") {
  OpCounter c;
  const Matrix<Int> a{{0, 1}, {2, 3}};
  const BruhatFactors good = bruhat_flip(a, c);

  SUBCASE("tampered scale") {
    BruhatFactors f = good;
    f.w_scales[0] = f.w_scales[0] * Rat(Int(2));
    std::string why;
    CHECK_FALSE(verify_bruhat(a, f, &why));
    CHECK(why == "V*w*U does not reconstruct the matrix");
  }
  SUBCASE("zero scale") {
    BruhatFactors f = good;
    f.w_scales[1] = Rat();
    CHECK_FALSE(verify_bruhat(a, f));
  }
  SUBCASE("broken triangular shape") {
    BruhatFactors f = good;
    f.U(1, 0) = 1;
    std::string why;
    CHECK_FALSE(verify_bruhat(a, f, &why));
    CHECK(why == "U is not upper triangular");
  }
  SUBCASE("shape mismatch throws") {
    CHECK_THROWS_AS(verify_bruhat(Matrix<Int>::zero(3, 3), good),
                    DimensionMismatch);
  }
}

TEST_CASE("trapezoidal contract for tall rank-deficient factors") {
  // V of a 4x2-rank matrix is 4x2 and may only occupy the top trapezoid:
  // V(i, j) = 0 whenever i - j > n - r = 2.
  std::mt19937 rng(431u);
  for (int t = 0; t < 10; ++t) {
    const Matrix<Int> a = random_low_rank(rng, 4, 4, 2);
    OpCounter c;
    const BruhatFactors f = bruhat_general(a, c);
    if (f.rank != 2) continue;  // the sampled product can drop rank
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 2; ++j)
        if (i - j > 2) CHECK(f.V(i, j) == 0);
  }
}

}  // TEST_SUITE
