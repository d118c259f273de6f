#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dyadic {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultPrecision = 64;

// 2-adic valuation of a nonzero integer.
long long int_v2(const BigInt& n);

// x mod 2^k, reduced into [0, 2^k).
BigInt mod_pow2(const BigInt& x, long long k);

// Inverse of an odd integer mod 2^k.
BigInt inv_mod_pow2(const BigInt& u, long long k);

// A 2-adic absolute value: zero or an exact power of two. Kept in log form so
// that no comparison ever goes through floating point.
class Abs2 {
 public:
  static Abs2 zero() { return Abs2(true, 0); }
  static Abs2 pow2(long long log2) { return Abs2(false, log2); }

  bool is_zero() const { return zero_; }
  long long log2() const;

  friend bool operator==(const Abs2& a, const Abs2& b) {
    return a.zero_ == b.zero_ && (a.zero_ || a.log2_ == b.log2_);
  }
  friend bool operator<(const Abs2& a, const Abs2& b) {
    if (a.zero_) return !b.zero_;
    if (b.zero_) return false;
    return a.log2_ < b.log2_;
  }
  friend bool operator<=(const Abs2& a, const Abs2& b) { return a < b || a == b; }
  friend bool operator>(const Abs2& a, const Abs2& b) { return b < a; }
  friend bool operator>=(const Abs2& a, const Abs2& b) { return b <= a; }
  friend Abs2 operator*(const Abs2& a, const Abs2& b) {
    if (a.zero_ || b.zero_) return zero();
    return pow2(a.log2_ + b.log2_);
  }

  // "0", "1", "8", "1/4", ...
  std::string str() const;

 private:
  Abs2(bool z, long long l) : zero_(z), log2_(l) {}
  bool zero_;
  long long log2_;
};

// A 2-adic number. Exact values are rationals in lowest terms; truncated
// values are expansions 2^val * unit with `prec` known digits, where the unit
// is odd and reduced into [1, 2^prec). Zero is exact with valuation treated as
// +infinity by callers (is_zero() must be checked before valuation()).
//
// All values are immutable; operations are pure and never mutate arguments.
class Dyadic {
 public:
  Dyadic() : exact_(true), rat_(0) {}

  static Dyadic zero() { return Dyadic(); }
  static Dyadic from_int(long long n);
  static Dyadic from_bigint(const BigInt& n);
  static Dyadic rational(const BigInt& num, const BigInt& den);
  static Dyadic from_rat(const BigRat& r);
  // 2^val * unit with `prec` significant digits; unit must be odd.
  static Dyadic approx(long long val, const BigInt& unit, int prec);

  // Literal grammar: rational "['-']digits['/'digits]" or expansion
  // "2^INT:BITS" with BITS[0] = '1' (digits listed from the low end).
  // Expansion literals carry their own precision (the number of bits given,
  // capped at max_precision).
  static Dyadic parse(std::string_view text, int max_precision = kDefaultPrecision);

  bool is_zero() const { return exact_ && boost::multiprecision::numerator(rat_) == 0; }
  bool is_exact() const { return exact_; }

  // Requires a nonzero value.
  long long valuation() const;
  Abs2 abs2() const;

  // Number of known significant digits; nullopt for exact values.
  std::optional<int> precision() const;

  // Exact values only.
  const BigRat& rat() const;

  // Unit part mod 2^k, in [0, 2^k). Requires nonzero and (for truncated
  // values) k <= precision.
  BigInt unit_mod(long long k) const;
  int unit_mod8() const { return static_cast<int>(unit_mod(3)); }

  Dyadic to_approx(int prec) const;

  Dyadic operator-() const;
  friend Dyadic operator+(const Dyadic& x, const Dyadic& y);
  friend Dyadic operator-(const Dyadic& x, const Dyadic& y);
  friend Dyadic operator*(const Dyadic& x, const Dyadic& y);
  friend Dyadic operator/(const Dyadic& x, const Dyadic& y);

  // Exact values compare as rationals; truncated values compare by
  // (valuation, digits, precision). A mixed comparison truncates the exact
  // side to the other's precision first.
  friend bool operator==(const Dyadic& x, const Dyadic& y);
  friend bool operator!=(const Dyadic& x, const Dyadic& y) { return !(x == y); }

  // True when the two values agree on all digits both sides know.
  bool agrees_with(const Dyadic& other) const;

  // Serialization reverses the parse grammar bit-exactly.
  std::string str() const;

  // Total bit size of the exact representation (0 for truncated values);
  // used by the orbit driver to cap numerator growth.
  std::size_t exact_bits() const;

 private:
  Dyadic(bool exact, BigRat r, long long val, BigInt unit, int prec)
      : exact_(exact), rat_(std::move(r)), val_(val), unit_(std::move(unit)), prec_(prec) {}

  bool exact_;
  BigRat rat_;          // exact payload
  long long val_ = 0;   // truncated payload
  BigInt unit_ = 0;
  int prec_ = 0;
};

// 2^e as an exact value.
Dyadic dyadic_pow2(long long e);

// |x - y|, or an upper bound for it. When truncated operands cancel in every
// known digit the difference is only known to be at most 2^-horizon; `exact`
// is false and `value` carries that bound.
struct Abs2Bound {
  Abs2 value;
  bool exact;
};
Abs2Bound abs2_of_difference(const Dyadic& x, const Dyadic& y);

// Square-root criterion: x = 2^v * u has a square root in Q_2 iff v is even
// and u = 1 (mod 8). Truncated inputs need at least 3 known digits.
bool sqrt_exists(const Dyadic& x);

// Canonical square root (unit part = 1 mod 4). Exact when x is the square of
// a rational, otherwise a truncated value with `prec` significant digits.
// The result is re-verified by squaring before it is returned.
Dyadic dyadic_sqrt(const Dyadic& x, int prec = kDefaultPrecision);

// The eight square classes of Q_2^*, named by the extension representative.
enum class SquareClass : int {
  Square,   // x itself a square
  NegOne,   // sqrt(-1)
  Two,      // sqrt(2)
  NegTwo,   // sqrt(-2)
  Three,    // sqrt(3)
  NegThree, // sqrt(-3)
  Six,      // sqrt(6)
  NegSix,   // sqrt(-6)
};

const char* to_string(SquareClass c);
// Representative of the class as a small integer (1, -1, 2, -2, ...).
long long square_class_representative(SquareClass c);

// Decided from v2(x) mod 2 and the unit part mod 8 alone.
SquareClass square_class(const Dyadic& x);

// True iff x/y is a square, i.e. Q_2(sqrt x) = Q_2(sqrt y).
bool same_extension(const Dyadic& x, const Dyadic& y);

}  // namespace dyadic
