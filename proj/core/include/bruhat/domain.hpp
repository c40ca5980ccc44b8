#pragma once

#include <concepts>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

/// Exact arithmetic layer: a commutative-domain concept, ring traits for
/// arbitrary-precision integers, an exact fraction type over any such domain,
/// and the operation counters used by the decomposition algorithms.
namespace bruhat {

// ---------------------------------------------------------------------------
// Error taxonomy
// ---------------------------------------------------------------------------

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Division by an exact zero (ring or fraction denominator).
class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("DivisionByZero: exact division by zero") {}
  explicit DivisionByZero(const std::string& msg) : Error(msg) {}
};

/// An exact division was requested but the divisor does not divide the
/// dividend in the ring. Inside the decompositions this is a fatal internal
/// error (the theory guarantees divisibility on valid inputs).
class InexactDivision : public Error {
 public:
  InexactDivision() : Error("InexactDivision: quotient is not in the ring") {}
  explicit InexactDivision(const std::string& msg) : Error(msg) {}
};

/// A leading (pivot) minor required to be nonzero vanished. `index()` is the
/// 1-based order of the offending minor.
class ZeroPivotMinor : public Error {
 public:
  explicit ZeroPivotMinor(int index)
      : Error("ZeroPivotMinor(" + std::to_string(index) +
              "): pivot minor of order " + std::to_string(index) +
              " is zero; input profile is not generic"),
        index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// Operand shapes do not conform.
class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& msg)
      : Error("DimensionMismatch: " + msg) {}
};

/// An index or minor specification lies outside the matrix.
class IndexOutOfRange : public Error {
 public:
  explicit IndexOutOfRange(const std::string& msg)
      : Error("IndexOutOfRange: " + msg) {}
};

/// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error("ParseError: " + msg) {}
};

/// A size precondition (e.g. power-of-two) was violated.
class InvalidSize : public Error {
 public:
  explicit InvalidSize(const std::string& msg)
      : Error("InvalidSize: " + msg) {}
};

// ---------------------------------------------------------------------------
// Ring traits and the commutative-domain concept
// ---------------------------------------------------------------------------

/// Per-ring glue: constants, divisibility, and (optionally) gcd and sign.
/// Specialize for each coefficient ring. `divides(a, b)` reads
/// "a is divisible by b"; `exact_quotient(a, b)` is a/b and may assume
/// divisibility.
template <class R>
struct RingTraits;  // primary template intentionally undefined

/// An integral commutative ring with exact equality. All decomposition
/// algorithms in this library are formulated over such a domain; the shipped
/// instantiation is arbitrary-precision integers.
template <class R>
concept CommutativeDomain = requires(const R a, const R b) {
  { a + b } -> std::convertible_to<R>;
  { a - b } -> std::convertible_to<R>;
  { a * b } -> std::convertible_to<R>;
  { -a } -> std::convertible_to<R>;
  { a == b } -> std::convertible_to<bool>;
  { RingTraits<R>::zero() } -> std::convertible_to<R>;
  { RingTraits<R>::one() } -> std::convertible_to<R>;
  { RingTraits<R>::is_zero(a) } -> std::convertible_to<bool>;
  { RingTraits<R>::divides(a, b) } -> std::convertible_to<bool>;
  { RingTraits<R>::exact_quotient(a, b) } -> std::convertible_to<R>;
  { RingTraits<R>::has_gcd } -> std::convertible_to<bool>;
};

/// Traits for GMP arbitrary-precision integers, the shipped coefficient ring.
template <>
struct RingTraits<mpz_class> {
  static mpz_class zero() { return mpz_class(0); }
  static mpz_class one() { return mpz_class(1); }
  static bool is_zero(const mpz_class& a) { return sgn(a) == 0; }

  static constexpr bool has_gcd = true;
  static mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    return ::gcd(a, b);
  }
  static mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    return ::lcm(a, b);
  }

  static constexpr bool has_signum = true;
  static bool is_negative(const mpz_class& a) { return sgn(a) < 0; }

  /// True iff b divides a (b nonzero).
  static bool divides(const mpz_class& a, const mpz_class& b) {
    return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0;
  }
  /// a / b assuming exact divisibility.
  static mpz_class exact_quotient(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
};

namespace detail {
// Feature probes for optional traits members.
template <class R>
concept HasSignum = requires(const R a) {
  { RingTraits<R>::is_negative(a) } -> std::convertible_to<bool>;
};
}  // namespace detail

// ---------------------------------------------------------------------------
// Operation counting
// ---------------------------------------------------------------------------

/// Explicit operation counter threaded through the algorithms (never global).
/// `mul_count` counts every ring multiplication, `div_count` every exact or
/// scale-forming division, `block_product_count` every dense matrix product.
/// `ring_muls_in_blocks` accumulates the scalar multiplications performed by
/// the block products the recursive LDU charges to its cost recurrence, and
/// `base_case_muls` the multiplicative work of its 1x1/2x2 base cases; the
/// two together are what the cost model predicts.
struct OpCounter {
  long long mul_count = 0;
  long long div_count = 0;
  long long block_product_count = 0;
  long long ring_muls_in_blocks = 0;
  long long base_case_muls = 0;
};

/// Ring addition (not counted: the cost model tracks multiplicative work).
template <CommutativeDomain R>
R add(const R& a, const R& b) {
  return a + b;
}

/// Counted ring multiplication.
template <CommutativeDomain R>
R mul(const R& a, const R& b, OpCounter& counter) {
  ++counter.mul_count;
  return a * b;
}

/// Counted exact ring division. Throws DivisionByZero on a zero divisor and
/// InexactDivision when the quotient is not in the ring.
template <CommutativeDomain R>
R exact_div(const R& a, const R& b, OpCounter& counter) {
  if (RingTraits<R>::is_zero(b)) throw DivisionByZero();
  if (!RingTraits<R>::divides(a, b)) throw InexactDivision();
  ++counter.div_count;
  return RingTraits<R>::exact_quotient(a, b);
}

// ---------------------------------------------------------------------------
// Exact fractions over a commutative domain
// ---------------------------------------------------------------------------

/// num/den over a commutative domain R. When R has a gcd the fraction is kept
/// in lowest terms (and, when R has a sign, with a positive denominator);
/// without a gcd the representation is unreduced and equality falls back to
/// cross-multiplication, which is correct in every integral domain.
template <CommutativeDomain R>
class Fraction {
 public:
  Fraction()
      : num_(RingTraits<R>::zero()), den_(RingTraits<R>::one()) {}
  explicit Fraction(R value)
      : num_(std::move(value)), den_(RingTraits<R>::one()) {}
  Fraction(R num, R den) : num_(std::move(num)), den_(std::move(den)) {
    reduce();
  }

  const R& num() const noexcept { return num_; }
  const R& den() const noexcept { return den_; }

  bool is_zero() const { return RingTraits<R>::is_zero(num_); }

  /// True iff the value lies in R.
  bool is_integral() const {
    if constexpr (RingTraits<R>::has_gcd) {
      if constexpr (detail::HasSignum<R>) {
        return den_ == RingTraits<R>::one();
      }
    }
    return RingTraits<R>::divides(num_, den_);
  }

  /// The value as a ring element; throws InexactDivision if it is not one.
  R to_ring() const {
    if (!RingTraits<R>::divides(num_, den_)) throw InexactDivision();
    return RingTraits<R>::exact_quotient(num_, den_);
  }

  Fraction operator-() const { return Fraction(-num_, den_, NoReduce{}); }

  friend Fraction operator+(const Fraction& a, const Fraction& b) {
    return Fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Fraction operator-(const Fraction& a, const Fraction& b) {
    return Fraction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Fraction operator*(const Fraction& a, const Fraction& b) {
    return Fraction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Fraction operator/(const Fraction& a, const Fraction& b) {
    if (RingTraits<R>::is_zero(b.num_)) throw DivisionByZero();
    return Fraction(a.num_ * b.den_, a.den_ * b.num_);
  }

  /// Exact equality via cross-multiplication (no canonical form required).
  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend bool operator!=(const Fraction& a, const Fraction& b) {
    return !(a == b);
  }

 private:
  struct NoReduce {};
  Fraction(R num, R den, NoReduce) : num_(std::move(num)), den_(std::move(den)) {}

  void reduce() {
    if (RingTraits<R>::is_zero(den_)) throw DivisionByZero();
    if constexpr (RingTraits<R>::has_gcd) {
      R g = RingTraits<R>::gcd(num_, den_);
      if (!(g == RingTraits<R>::one()) && !RingTraits<R>::is_zero(g)) {
        num_ = RingTraits<R>::exact_quotient(num_, g);
        den_ = RingTraits<R>::exact_quotient(den_, g);
      }
    }
    if constexpr (detail::HasSignum<R>) {
      if (RingTraits<R>::is_negative(den_)) {
        num_ = -num_;
        den_ = -den_;
      }
    }
  }

  R num_;
  R den_;
};

/// Uncounted fraction construction from a numerator/denominator pair.
template <CommutativeDomain R>
Fraction<R> frac_normalize(const R& num, const R& den) {
  return Fraction<R>(num, den);
}

/// Counted formation of a diagonal scale fraction num/den. Counts as one
/// division: the cost model charges the base cases for producing their
/// diagonal scales.
template <CommutativeDomain R>
Fraction<R> make_scale(const R& num, const R& den, OpCounter& counter) {
  if (RingTraits<R>::is_zero(den)) throw DivisionByZero();
  ++counter.div_count;
  return Fraction<R>(num, den);
}

// ---------------------------------------------------------------------------
// Shipped instantiation
// ---------------------------------------------------------------------------

/// Arbitrary-precision integer coefficient ring.
using Int = mpz_class;
/// Exact rationals over Int (the fraction field used for verification and for
/// the few field-valued intermediates).
using Rat = Fraction<Int>;

}  // namespace bruhat
