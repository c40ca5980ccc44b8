#pragma once

#include <initializer_list>
#include <vector>

#include "bruhat/domain.hpp"

/// Dense row-major matrices over an exact coefficient type, permutations as
/// index maps, block splitting/assembly, and the counted classical matrix
/// product. Public indices are 0-based throughout.
namespace bruhat {

// ---------------------------------------------------------------------------
// Matrix
// ---------------------------------------------------------------------------

/// Dense row-major matrix. Dimensions may be zero so that block algebra on
/// degenerate splits works uniformly; parsers and decomposition entry points
/// reject empty inputs.
template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
      throw DimensionMismatch("negative matrix dimension");
    data_.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  }
  /// Row-major construction from nested braces, e.g. {{1,2},{3,4}}.
  Matrix(std::initializer_list<std::initializer_list<T>> rows)
      : rows_(static_cast<int>(rows.size())), cols_(0) {
    for (const auto& r : rows) {
      if (cols_ == 0) cols_ = static_cast<int>(r.size());
      if (static_cast<int>(r.size()) != cols_)
        throw DimensionMismatch("ragged initializer rows");
      for (const auto& v : r) data_.push_back(v);
    }
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = RingTraits<T>::one();
    return m;
  }
  static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  T& operator()(int i, int j) {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const T& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  /// Bounds-checked access.
  const T& at(int i, int j) const {
    check_index(i, j);
    return (*this)(i, j);
  }
  T& at(int i, int j) {
    check_index(i, j);
    return (*this)(i, j);
  }

  /// Copy of the `height` x `width` block whose top-left corner is (r0, c0).
  Matrix block(int r0, int c0, int height, int width) const {
    if (height < 0 || width < 0 || r0 < 0 || c0 < 0 || r0 + height > rows_ ||
        c0 + width > cols_)
      throw IndexOutOfRange("block outside matrix");
    Matrix out(height, width);
    for (int i = 0; i < height; ++i)
      for (int j = 0; j < width; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

  /// Overwrites the block with top-left corner (r0, c0) by `m`.
  void set_block(int r0, int c0, const Matrix& m) {
    if (r0 < 0 || c0 < 0 || r0 + m.rows() > rows_ || c0 + m.cols() > cols_)
      throw IndexOutOfRange("block outside matrix");
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) (*this)(r0 + i, c0 + j) = m(i, j);
  }

  Matrix transposed() const {
    Matrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  bool is_zero() const {
    for (const T& v : data_)
      if (!RingTraits<T>::is_zero(v)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!(a.data_[i] == b.data_[i])) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  void check_index(int i, int j) const {
    if (i < 0 || j < 0 || i >= rows_ || j >= cols_)
      throw IndexOutOfRange("entry (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") outside " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
  }

  int rows_;
  int cols_;
  std::vector<T> data_;
};

/// Fraction traits so Matrix<Fraction<R>> can reuse the generic helpers.
template <CommutativeDomain R>
struct RingTraits<Fraction<R>> {
  static Fraction<R> zero() { return Fraction<R>(); }
  static Fraction<R> one() { return Fraction<R>(RingTraits<R>::one()); }
  static bool is_zero(const Fraction<R>& a) { return a.is_zero(); }
  static constexpr bool has_gcd = false;
  static bool divides(const Fraction<R>& a, const Fraction<R>& b) {
    (void)a;
    return !b.is_zero();
  }
  static Fraction<R> exact_quotient(const Fraction<R>& a, const Fraction<R>& b) {
    return a / b;
  }
};

// ---------------------------------------------------------------------------
// Elementwise and block operations
// ---------------------------------------------------------------------------

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("matrix sum of unequal shapes");
  Matrix<T> out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("matrix difference of unequal shapes");
  Matrix<T> out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a) {
  Matrix<T> out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = -a(i, j);
  return out;
}

/// Counted classical matrix product: one block product, r*k*c scalar
/// multiplications.
template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b, OpCounter& counter) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("product of " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " by " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  counter.block_product_count += 1;
  counter.mul_count += 1LL * a.rows() * a.cols() * b.cols();
  Matrix<T> out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (RingTraits<T>::is_zero(aik)) continue;
      for (int j = 0; j < b.cols(); ++j)
        out(i, j) = out(i, j) + aik * b(k, j);
    }
  return out;
}

/// Counted scalar-by-matrix scaling (one multiplication per entry). Charged
/// to mul_count but never to a block-product recurrence.
template <class T>
Matrix<T> scale_matrix(const Matrix<T>& a, const T& s, OpCounter& counter) {
  counter.mul_count += 1LL * a.rows() * a.cols();
  Matrix<T> out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) * s;
  return out;
}

/// Counted application of a diagonal on the left: row i scaled by scales[i].
template <class T>
Matrix<T> apply_row_scales(const Matrix<T>& a, const std::vector<T>& scales,
                           OpCounter& counter) {
  if (static_cast<int>(scales.size()) != a.rows())
    throw DimensionMismatch("row scale count");
  counter.mul_count += 1LL * a.rows() * a.cols();
  Matrix<T> out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = scales[i] * a(i, j);
  return out;
}

/// Counted application of a diagonal on the right: column j scaled by
/// scales[j].
template <class T>
Matrix<T> apply_col_scales(const Matrix<T>& a, const std::vector<T>& scales,
                           OpCounter& counter) {
  if (static_cast<int>(scales.size()) != a.cols())
    throw DimensionMismatch("column scale count");
  counter.mul_count += 1LL * a.rows() * a.cols();
  Matrix<T> out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) * scales[j];
  return out;
}

/// Assembles a block grid into one matrix. Every row of the grid must have
/// the same number of blocks, block heights must agree along each grid row
/// and widths along each grid column; zero-dimension blocks are allowed.
template <class T>
Matrix<T> assemble_blocks(const std::vector<std::vector<Matrix<T>>>& grid) {
  if (grid.empty()) return Matrix<T>();
  const std::size_t bcols = grid.front().size();
  std::vector<int> heights(grid.size(), 0), widths(bcols, 0);
  for (std::size_t bi = 0; bi < grid.size(); ++bi) {
    if (grid[bi].size() != bcols)
      throw DimensionMismatch("ragged block grid");
    for (std::size_t bj = 0; bj < bcols; ++bj) {
      const Matrix<T>& blk = grid[bi][bj];
      if (bj == 0) heights[bi] = blk.rows();
      if (blk.rows() != heights[bi])
        throw DimensionMismatch("block heights disagree in grid row");
      if (bi == 0) widths[bj] = blk.cols();
      if (blk.cols() != widths[bj])
        throw DimensionMismatch("block widths disagree in grid column");
    }
  }
  int total_r = 0, total_c = 0;
  for (int h : heights) total_r += h;
  for (int w : widths) total_c += w;
  Matrix<T> out(total_r, total_c);
  int r0 = 0;
  for (std::size_t bi = 0; bi < grid.size(); ++bi) {
    int c0 = 0;
    for (std::size_t bj = 0; bj < bcols; ++bj) {
      out.set_block(r0, c0, grid[bi][bj]);
      c0 += widths[bj];
    }
    r0 += heights[bi];
  }
  return out;
}

/// Block-diagonal assembly.
template <class T>
Matrix<T> block_diag(const std::vector<Matrix<T>>& blocks) {
  std::size_t n = blocks.size();
  std::vector<std::vector<Matrix<T>>> grid(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      grid[i].push_back(i == j ? blocks[j]
                               : Matrix<T>::zero(blocks[i].rows(),
                                                 blocks[j].cols()));
  return assemble_blocks(grid);
}

template <class T>
Matrix<T> diagonal_matrix(const std::vector<T>& entries) {
  Matrix<T> out(static_cast<int>(entries.size()),
                static_cast<int>(entries.size()));
  for (int i = 0; i < out.rows(); ++i) out(i, i) = entries[i];
  return out;
}

/// True iff every entry strictly above the main diagonal is zero.
template <class T>
bool is_lower_triangular(const Matrix<T>& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j)
      if (!RingTraits<T>::is_zero(a(i, j))) return false;
  return true;
}

/// True iff every entry strictly below the main diagonal is zero.
template <class T>
bool is_upper_triangular(const Matrix<T>& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < i && j < a.cols(); ++j)
      if (!RingTraits<T>::is_zero(a(i, j))) return false;
  return true;
}

/// Embeds an integer matrix in the fraction field.
inline Matrix<Rat> to_field(const Matrix<Int>& a) {
  Matrix<Rat> out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = Rat(a(i, j));
  return out;
}

/// Projects a fraction matrix back to the ring; throws InexactDivision if any
/// entry is not integral.
inline Matrix<Int> to_ring(const Matrix<Rat>& a) {
  Matrix<Int> out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).to_ring();
  return out;
}

// ---------------------------------------------------------------------------
// Splitting
// ---------------------------------------------------------------------------

/// The four blocks of a 2x2 partition.
template <class T>
struct SplitParts {
  Matrix<T> a;  ///< top-left
  Matrix<T> b;  ///< top-right
  Matrix<T> c;  ///< bottom-left
  Matrix<T> d;  ///< bottom-right
};

/// Splits at interior cut lines: `a` gets the first row_cut rows and col_cut
/// columns.
template <class T>
SplitParts<T> split(const Matrix<T>& m, int row_cut, int col_cut) {
  if (row_cut <= 0 || row_cut >= m.rows() || col_cut <= 0 ||
      col_cut >= m.cols())
    throw IndexOutOfRange("split cuts must be interior");
  return SplitParts<T>{
      m.block(0, 0, row_cut, col_cut),
      m.block(0, col_cut, row_cut, m.cols() - col_cut),
      m.block(row_cut, 0, m.rows() - row_cut, col_cut),
      m.block(row_cut, col_cut, m.rows() - row_cut, m.cols() - col_cut)};
}

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

/// A permutation of {0, ..., n-1} stored as an image map. As a matrix it has
/// a one in row i, column image(i); applying it on the left therefore moves
/// source row image(i) to destination row i.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const noexcept { return images_; }

  Permutation inverse() const;
  bool is_identity() const;

  /// The permutation matrix: one at (i, image(i)).
  template <class T>
  Matrix<T> to_matrix() const {
    Matrix<T> m(size(), size());
    for (int i = 0; i < size(); ++i)
      m(i, images_[static_cast<std::size_t>(i)]) = RingTraits<T>::one();
    return m;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.images_ == b.images_;
  }

 private:
  std::vector<int> images_;
};

/// Order-reversing permutation (i -> n-1-i).
Permutation flip(int n);

enum class Side { Left, Right };

/// Multiplies by the permutation matrix on the requested side without
/// touching counters. Left: result row i = a row p(i). Right: result column
/// p(k) = a column k.
template <class T>
Matrix<T> apply_perm(const Permutation& p, const Matrix<T>& a, Side side) {
  Matrix<T> out(a.rows(), a.cols());
  if (side == Side::Left) {
    if (p.size() != a.rows())
      throw DimensionMismatch("permutation size vs rows");
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) out(i, j) = a(p(i), j);
  } else {
    if (p.size() != a.cols())
      throw DimensionMismatch("permutation size vs cols");
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) out(i, p(j)) = a(i, j);
  }
  return out;
}

/// Recovers the index map from a 0/1 permutation matrix.
Permutation permutation_from_matrix(const Matrix<Int>& m);

// ---------------------------------------------------------------------------
// Fraction-free determinant
// ---------------------------------------------------------------------------

/// Exact determinant by fraction-free one-step elimination with row
/// interchanges; every division along the way is exact in the ring.
Int bareiss_det(const Matrix<Int>& a);

}  // namespace bruhat
