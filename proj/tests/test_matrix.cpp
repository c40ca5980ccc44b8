#include "bruhat/matrix.hpp"

#include <random>

#include "doctest.h"
#include "test_support.hpp"

using namespace bruhat;

TEST_SUITE("matrix") {

TEST_CASE("construction, access, and equality") {
  const Matrix<Int> a{{1, 2}, {3, 4}};
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 2);
  CHECK(a(1, 0) == 3);
  CHECK(a.at(0, 1) == 2);
  CHECK_THROWS_AS(a.at(2, 0), IndexOutOfRange);
  CHECK_THROWS_AS(a.at(0, -1), IndexOutOfRange);
  CHECK_THROWS_AS((Matrix<Int>{{1, 2}, {3}}), DimensionMismatch);
  CHECK_THROWS_AS(Matrix<Int>(-1, 2), DimensionMismatch);
  CHECK(Matrix<Int>::identity(2) == Matrix<Int>{{1, 0}, {0, 1}});
  CHECK(Matrix<Int>::zero(2, 3).is_zero());
  CHECK_FALSE(a.is_zero());
  CHECK(a != Matrix<Int>{{1, 2}, {3, 5}});
  CHECK(a != Matrix<Int>::zero(2, 3));
  const Matrix<Int> empty;
  CHECK(empty.rows() == 0);
  CHECK(empty.is_zero());
}

TEST_CASE("blocks, transpose, and splitting") {
  const Matrix<Int> a{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  CHECK(a.block(1, 1, 2, 2) == Matrix<Int>{{5, 6}, {8, 9}});
  CHECK(a.block(0, 0, 0, 2).rows() == 0);
  CHECK_THROWS_AS(a.block(2, 2, 2, 2), IndexOutOfRange);
  Matrix<Int> b = a;
  b.set_block(0, 1, Matrix<Int>{{-1}, {-2}});
  CHECK(b(0, 1) == -1);
  CHECK(b(1, 1) == -2);
  CHECK_THROWS_AS(b.set_block(2, 2, Matrix<Int>{{1, 1}, {1, 1}}),
                  IndexOutOfRange);
  CHECK(a.transposed()(0, 2) == 7);
  CHECK(a.transposed().transposed() == a);

  const SplitParts<Int> parts = split(a, 1, 2);
  CHECK(parts.a == Matrix<Int>{{1, 2}});
  CHECK(parts.b == Matrix<Int>{{3}});
  CHECK(parts.c == Matrix<Int>{{4, 5}, {7, 8}});
  CHECK(parts.d == Matrix<Int>{{6}, {9}});
  CHECK_THROWS_AS(split(a, 0, 1), IndexOutOfRange);
  CHECK_THROWS_AS(split(a, 3, 1), IndexOutOfRange);
}

TEST_CASE("counted product") {
  OpCounter c;
  const Matrix<Int> a{{1, 2}, {3, 4}};
  const Matrix<Int> b{{5, 6}, {7, 8}};
  CHECK(mat_mul(a, b, c) == Matrix<Int>{{19, 22}, {43, 50}});
  CHECK(c.block_product_count == 1);
  CHECK(c.mul_count == 8);
  CHECK_THROWS_AS(mat_mul(a, Matrix<Int>{{1, 2}}, c), DimensionMismatch);
  // rectangular shapes and the mul accounting r*k*c
  OpCounter c2;
  const Matrix<Int> r = mat_mul(Matrix<Int>{{1, 2, 3}},
                                Matrix<Int>{{1, 0}, {0, 1}, {1, 1}}, c2);
  CHECK(r == Matrix<Int>{{4, 5}});
  CHECK(c2.mul_count == 6);
}

TEST_CASE("scalings") {
  OpCounter c;
  const Matrix<Int> a{{1, 2}, {3, 4}};
  CHECK(scale_matrix(a, Int(3), c) == Matrix<Int>{{3, 6}, {9, 12}});
  CHECK(apply_row_scales(a, {Int(2), Int(-1)}, c) ==
        Matrix<Int>{{2, 4}, {-3, -4}});
  CHECK(apply_col_scales(a, {Int(2), Int(-1)}, c) ==
        Matrix<Int>{{2, -2}, {6, -4}});
  CHECK_THROWS_AS(apply_row_scales(a, {Int(1)}, c), DimensionMismatch);
  CHECK_THROWS_AS(apply_col_scales(a, {Int(1)}, c), DimensionMismatch);
  CHECK(c.block_product_count == 0);
}

TEST_CASE("block assembly") {
  const Matrix<Int> a{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  const SplitParts<Int> p = split(a, 2, 1);
  CHECK(assemble_blocks<Int>({{p.a, p.b}, {p.c, p.d}}) == a);
  CHECK_THROWS_AS(assemble_blocks<Int>({{p.a, p.b}, {p.c}}),
                  DimensionMismatch);
  CHECK_THROWS_AS(assemble_blocks<Int>({{p.a, p.d}, {p.c, p.b}}),
                  DimensionMismatch);
  // zero-dimension blocks participate silently
  const Matrix<Int> none(0, 2);
  CHECK(assemble_blocks<Int>({{none}, {Matrix<Int>{{1, 2}}}}) ==
        Matrix<Int>{{1, 2}});
  CHECK(block_diag<Int>({Matrix<Int>{{2}}, Matrix<Int>{{3, 0}, {1, 4}}}) ==
        Matrix<Int>{{2, 0, 0}, {0, 3, 0}, {0, 1, 4}});
  CHECK(diagonal_matrix<Int>({Int(2), Int(5)}) ==
        Matrix<Int>{{2, 0}, {0, 5}});
}

TEST_CASE("triangular predicates") {
  CHECK(is_lower_triangular(Matrix<Int>{{1, 0}, {5, 2}}));
  CHECK_FALSE(is_lower_triangular(Matrix<Int>{{1, 1}, {0, 2}}));
  CHECK(is_upper_triangular(Matrix<Int>{{1, 7}, {0, 2}}));
  CHECK_FALSE(is_upper_triangular(Matrix<Int>{{1, 0}, {5, 2}}));
  // rectangular conventions: only entries with both indices in range count
  CHECK(is_upper_triangular(Matrix<Int>{{1, 2, 3}, {0, 4, 5}}));
  CHECK(is_lower_triangular(Matrix<Int>{{1, 0}, {2, 3}, {4, 5}}));
}

TEST_CASE("field embedding and ring projection") {
  const Matrix<Int> a{{2, -3}, {0, 7}};
  CHECK(to_ring(to_field(a)) == a);
  Matrix<Rat> f = to_field(a);
  f(0, 0) = Rat(Int(1), Int(2));
  CHECK_THROWS_AS(to_ring(f), InexactDivision);
}

TEST_CASE("permutations") {
  CHECK_THROWS_AS(Permutation({0, 0}), DimensionMismatch);
  CHECK_THROWS_AS(Permutation({0, 2}), DimensionMismatch);
  CHECK_THROWS_AS(Permutation({-1, 0}), DimensionMismatch);
  const Permutation p({1, 2, 0});
  CHECK(p.size() == 3);
  CHECK(p(0) == 1);
  CHECK(p.inverse() == Permutation({2, 0, 1}));
  CHECK(Permutation::identity(3).is_identity());
  CHECK_FALSE(p.is_identity());
  CHECK(flip(4) == Permutation({3, 2, 1, 0}));

  const Matrix<Int> m = p.to_matrix<Int>();
  CHECK(m(0, 1) == 1);
  CHECK(m(1, 2) == 1);
  CHECK(m(2, 0) == 1);
  CHECK(permutation_from_matrix(m) == p);
  CHECK_THROWS_AS(permutation_from_matrix(Matrix<Int>{{1, 1}, {0, 0}}),
                  DimensionMismatch);
  CHECK_THROWS_AS(permutation_from_matrix(Matrix<Int>{{1, 0, 0}, {0, 1, 0}}),
                  DimensionMismatch);

  const Matrix<Int> a{{10, 11}, {20, 21}, {30, 31}};
  const Matrix<Int> left = apply_perm(p, a, Side::Left);
  CHECK(left == Matrix<Int>{{20, 21}, {30, 31}, {10, 11}});  // row i = a(p(i))
  OpCounter scratch;
  CHECK(left == mat_mul(m, a, scratch));
  const Permutation q({1, 0});
  const Matrix<Int> right = apply_perm(q, a, Side::Right);
  CHECK(right == Matrix<Int>{{11, 10}, {21, 20}, {31, 30}});
  CHECK_THROWS_AS(apply_perm(q, a, Side::Left), DimensionMismatch);
  CHECK_THROWS_AS(apply_perm(p, a, Side::Right), DimensionMismatch);
}

TEST_CASE("fraction-free determinant") {
  CHECK(bareiss_det(Matrix<Int>{{7}}) == 7);
  CHECK(bareiss_det(Matrix<Int>{{1, 2}, {3, 4}}) == -2);
  CHECK(bareiss_det(Matrix<Int>{{2, 0, 0}, {0, 3, 0}, {0, 0, 4}}) == 24);
  CHECK(bareiss_det(Matrix<Int>{{1, 2}, {2, 4}}) == 0);
  CHECK(bareiss_det(test_support::golden4()) == 60);
  CHECK_THROWS_AS(bareiss_det(Matrix<Int>{{1, 2}}), DimensionMismatch);
  // a matrix that forces row interchanges
  CHECK(bareiss_det(Matrix<Int>{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}) == -1);
  std::mt19937 rng(11u);
  for (int t = 0; t < 10; ++t) {
    const Matrix<Int> a = test_support::random_matrix(rng, 5, 5, -9, 9);
    Matrix<Int> doubled = a;
    for (int j = 0; j < 5; ++j) doubled(0, j) = 2 * a(0, j);
    CHECK(bareiss_det(doubled) == 2 * bareiss_det(a));
  }
}

}  // TEST_SUITE
