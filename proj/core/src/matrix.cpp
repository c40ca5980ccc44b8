#include "bruhat/matrix.hpp"

#include <algorithm>
#include <numeric>

namespace bruhat {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= static_cast<int>(images_.size()) || seen[v])
      throw DimensionMismatch("permutation images are not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>((*this)(i))] = i;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if ((*this)(i) != i) return false;
  return true;
}

Permutation flip(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = n - 1 - i;
  return Permutation(std::move(images));
}

Permutation permutation_from_matrix(const Matrix<Int>& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("permutation matrix must be square");
  std::vector<int> images(static_cast<std::size_t>(m.rows()), -1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      const Int& v = m(i, j);
      if (sgn(v) == 0) continue;
      if (v != 1 || images[static_cast<std::size_t>(i)] != -1)
        throw DimensionMismatch("not a 0/1 permutation matrix");
      images[static_cast<std::size_t>(i)] = j;
    }
    if (images[static_cast<std::size_t>(i)] == -1)
      throw DimensionMismatch("permutation matrix has an empty row");
  }
  return Permutation(std::move(images));
}

Int bareiss_det(const Matrix<Int>& a) {
  if (a.rows() != a.cols())
    throw DimensionMismatch("determinant of a non-square matrix");
  const int n = a.rows();
  if (n == 0) return 1;
  Matrix<Int> m = a;
  Int prev = 1;
  bool negate = false;
  for (int k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      int pivot_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (sgn(m(r, k)) != 0) {
          pivot_row = r;
          break;
        }
      if (pivot_row == -1) return 0;
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(pivot_row, j));
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        if (!RingTraits<Int>::divides(num, prev)) throw InexactDivision();
        m(i, j) = RingTraits<Int>::exact_quotient(num, prev);
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return negate ? Int(-m(n - 1, n - 1)) : m(n - 1, n - 1);
}

}  // namespace bruhat
