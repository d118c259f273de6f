#include "dyadic/dyadic.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <utility>

namespace dyadic {

namespace mp = boost::multiprecision;

long long int_v2(const BigInt& n) {
  if (n == 0) throw DomainError("int_v2: zero has no finite valuation");
  return static_cast<long long>(mp::lsb(mp::abs(n)));
}

BigInt mod_pow2(const BigInt& x, long long k) {
  if (k <= 0) return 0;
  BigInt mask = (BigInt(1) << static_cast<unsigned>(k)) - 1;
  BigInt r = x & mask;  // cpp_int bitwise ops act on the two's-complement image
  if (r < 0) r += (BigInt(1) << static_cast<unsigned>(k));
  return r;
}

BigInt inv_mod_pow2(const BigInt& u, long long k) {
  if ((u & 1) == 0) throw DomainError("inv_mod_pow2: even argument");
  if (k <= 0) return 0;
  // Newton doubling: correct bits double each round.
  BigInt x = 1;
  for (long long bits = 1; bits < k; bits *= 2) {
    long long next = std::min(2 * bits, k);
    x = mod_pow2(x * (2 - u * x), next);
  }
  return mod_pow2(x, k);
}

long long Abs2::log2() const {
  if (zero_) throw DomainError("Abs2::log2 on zero");
  return log2_;
}

std::string Abs2::str() const {
  if (zero_) return "0";
  if (log2_ >= 0) return (BigInt(1) << static_cast<unsigned>(log2_)).str();
  return "1/" + (BigInt(1) << static_cast<unsigned>(-log2_)).str();
}

Dyadic Dyadic::from_int(long long n) { return from_bigint(BigInt(n)); }

Dyadic Dyadic::from_bigint(const BigInt& n) { return Dyadic(true, BigRat(n), 0, 0, 0); }

Dyadic Dyadic::rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational: zero denominator");
  return Dyadic(true, BigRat(num, den), 0, 0, 0);
}

Dyadic Dyadic::from_rat(const BigRat& r) { return Dyadic(true, r, 0, 0, 0); }

Dyadic Dyadic::approx(long long val, const BigInt& unit, int prec) {
  if (prec < 1) throw PrecisionError("approx: needs at least one digit");
  if ((unit & 1) == 0) throw DomainError("approx: unit part must be odd");
  return Dyadic(false, BigRat(0), val, mod_pow2(unit, prec), prec);
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

BigInt parse_uint(std::string_view s) { return BigInt(std::string(s)); }

}  // namespace

Dyadic Dyadic::parse(std::string_view text, int max_precision) {
  if (text.starts_with("2^")) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ParseError("expansion literal missing ':'");
    std::string_view vpart = text.substr(2, colon - 2);
    std::string_view bits = text.substr(colon + 1);
    bool neg = vpart.starts_with("-");
    std::string_view vdigits = neg ? vpart.substr(1) : vpart;
    if (!all_digits(vdigits)) throw ParseError("bad exponent in expansion literal");
    long long val = 0;
    auto res = std::from_chars(vdigits.data(), vdigits.data() + vdigits.size(), val);
    if (res.ec != std::errc() || res.ptr != vdigits.data() + vdigits.size())
      throw ParseError("bad exponent in expansion literal");
    if (neg) val = -val;
    if (bits.empty() || bits.find_first_not_of("01") != std::string_view::npos)
      throw ParseError("expansion digits must be bits");
    if (bits[0] != '1') throw ParseError("expansion must start with digit 1");
    int prec = static_cast<int>(std::min<std::size_t>(bits.size(), static_cast<std::size_t>(max_precision)));
    BigInt unit = 0;
    for (int i = prec - 1; i >= 0; --i) unit = 2 * unit + (bits[static_cast<std::size_t>(i)] - '0');
    return approx(val, unit, prec);
  }
  bool neg = text.starts_with("-");
  std::string_view body = neg ? text.substr(1) : text;
  auto slash = body.find('/');
  BigInt num, den = 1;
  if (slash == std::string_view::npos) {
    if (!all_digits(body)) throw ParseError("bad rational literal: " + std::string(text));
    num = parse_uint(body);
  } else {
    std::string_view np = body.substr(0, slash), dp = body.substr(slash + 1);
    if (!all_digits(np) || !all_digits(dp)) throw ParseError("bad rational literal: " + std::string(text));
    num = parse_uint(np);
    den = parse_uint(dp);
    if (den == 0) throw ParseError("zero denominator: " + std::string(text));
  }
  if (neg) num = -num;
  return rational(num, den);
}

long long Dyadic::valuation() const {
  if (is_zero()) throw DomainError("valuation of zero");
  if (!exact_) return val_;
  return int_v2(mp::numerator(rat_)) - int_v2(mp::denominator(rat_));
}

Abs2 Dyadic::abs2() const {
  if (is_zero()) return Abs2::zero();
  return Abs2::pow2(-valuation());
}

std::optional<int> Dyadic::precision() const {
  if (exact_) return std::nullopt;
  return prec_;
}

const BigRat& Dyadic::rat() const {
  if (!exact_) throw DomainError("rat() on truncated value");
  return rat_;
}

BigInt Dyadic::unit_mod(long long k) const {
  if (is_zero()) throw DomainError("unit_mod of zero");
  if (!exact_) {
    if (k > prec_) throw PrecisionError("unit_mod: only " + std::to_string(prec_) + " digits known");
    return mod_pow2(unit_, k);
  }
  BigInt n = mp::numerator(rat_), d = mp::denominator(rat_);
  BigInt nu = n >> static_cast<unsigned>(int_v2(n));
  BigInt du = d >> static_cast<unsigned>(int_v2(d));
  return mod_pow2(mod_pow2(nu, k) * inv_mod_pow2(du, k), k);
}

Dyadic Dyadic::to_approx(int prec) const {
  if (prec < 1) throw PrecisionError("to_approx: needs at least one digit");
  if (!exact_) {
    if (prec >= prec_) return *this;
    return approx(val_, mod_pow2(unit_, prec), prec);
  }
  if (is_zero()) throw PrecisionError("to_approx: zero has no leading digit");
  return approx(valuation(), unit_mod(prec), prec);
}

Dyadic Dyadic::operator-() const {
  if (exact_) return from_rat(-rat_);
  return approx(val_, (BigInt(1) << static_cast<unsigned>(prec_)) - unit_, prec_);
}

namespace {

// Shared add/sub path for anything involving a truncated operand. Result
// digits are limited by the lowest absolute precision horizon of the inputs;
// cancellation shows up as a raised valuation and fewer remaining digits.
Dyadic approx_add(const Dyadic& x, const Dyadic& y, bool subtract) {
  long long horizon = 0;
  bool have_horizon = false;
  for (const Dyadic* p : {&x, &y}) {
    if (auto pr = p->precision()) {
      long long h = p->valuation() + *pr;
      horizon = have_horizon ? std::min(horizon, h) : h;
      have_horizon = true;
    }
  }
  long long vx = x.valuation(), vy = y.valuation();
  long long v = std::min(vx, vy);
  long long width = horizon - v;
  if (width <= 0) throw PrecisionError("addition below precision horizon");
  // Integer images of x/2^v and y/2^v mod 2^width. An exact operand sitting
  // entirely below the horizon contributes nothing.
  auto image = [&](const Dyadic& z, long long vz) -> BigInt {
    long long need = width - (vz - v);
    if (need <= 0) return 0;
    return z.unit_mod(need) << static_cast<unsigned>(vz - v);
  };
  BigInt s = subtract ? image(x, vx) - image(y, vy) : image(x, vx) + image(y, vy);
  s = mod_pow2(s, width);
  if (s == 0) throw PrecisionError("cancellation exhausted all known digits");
  long long t = int_v2(s);
  long long prec = width - t;
  if (prec < 1) throw PrecisionError("cancellation exhausted all known digits");
  return Dyadic::approx(v + t, s >> static_cast<unsigned>(t), static_cast<int>(prec));
}

Dyadic approx_mul(const Dyadic& x, const Dyadic& y) {
  int prec = std::min(x.precision().value_or(INT32_MAX), y.precision().value_or(INT32_MAX));
  BigInt u = mod_pow2(x.unit_mod(prec) * y.unit_mod(prec), prec);
  return Dyadic::approx(x.valuation() + y.valuation(), u, prec);
}

Dyadic approx_div(const Dyadic& x, const Dyadic& y) {
  int prec = std::min(x.precision().value_or(INT32_MAX), y.precision().value_or(INT32_MAX));
  BigInt u = mod_pow2(x.unit_mod(prec) * inv_mod_pow2(y.unit_mod(prec), prec), prec);
  return Dyadic::approx(x.valuation() - y.valuation(), u, prec);
}

}  // namespace

Dyadic operator+(const Dyadic& x, const Dyadic& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.is_exact() && y.is_exact()) return Dyadic::from_rat(x.rat() + y.rat());
  return approx_add(x, y, false);
}

Dyadic operator-(const Dyadic& x, const Dyadic& y) {
  if (y.is_zero()) return x;
  if (x.is_zero()) return -y;
  if (x.is_exact() && y.is_exact()) return Dyadic::from_rat(x.rat() - y.rat());
  return approx_add(x, y, true);
}

Dyadic operator*(const Dyadic& x, const Dyadic& y) {
  if (x.is_zero() || y.is_zero()) return Dyadic::zero();
  if (x.is_exact() && y.is_exact()) return Dyadic::from_rat(x.rat() * y.rat());
  return approx_mul(x, y);
}

Dyadic operator/(const Dyadic& x, const Dyadic& y) {
  if (y.is_zero()) throw DomainError("division by zero");
  if (x.is_zero()) return Dyadic::zero();
  if (x.is_exact() && y.is_exact()) return Dyadic::from_rat(x.rat() / y.rat());
  return approx_div(x, y);
}

bool operator==(const Dyadic& x, const Dyadic& y) {
  if (x.is_exact() && y.is_exact()) return x.rat_ == y.rat_;
  if (x.is_zero() || y.is_zero()) return false;  // truncated values are never zero
  if (!x.is_exact() && !y.is_exact())
    return x.val_ == y.val_ && x.prec_ == y.prec_ && x.unit_ == y.unit_;
  const Dyadic& ex = x.is_exact() ? x : y;
  const Dyadic& ap = x.is_exact() ? y : x;
  return ex.to_approx(ap.prec_) == ap;
}

bool Dyadic::agrees_with(const Dyadic& other) const {
  if (is_exact() && other.is_exact()) return *this == other;
  if (is_zero() || other.is_zero()) return false;
  int prec = std::min(precision().value_or(INT32_MAX), other.precision().value_or(INT32_MAX));
  return valuation() == other.valuation() && unit_mod(prec) == other.unit_mod(prec);
}

std::string Dyadic::str() const {
  if (exact_) {
    BigInt n = mp::numerator(rat_), d = mp::denominator(rat_);
    std::string s = n.str();
    if (d != 1) s += "/" + d.str();
    return s;
  }
  std::string s = "2^" + std::to_string(val_) + ":";
  for (int i = 0; i < prec_; ++i) s += ((unit_ >> static_cast<unsigned>(i)) & 1) != 0 ? '1' : '0';
  return s;
}

std::size_t Dyadic::exact_bits() const {
  if (!exact_) return 0;
  BigInt n = mp::abs(mp::numerator(rat_)), d = mp::denominator(rat_);
  auto bits = [](const BigInt& v) { return v == 0 ? std::size_t{0} : static_cast<std::size_t>(mp::msb(v)) + 1; };
  return bits(n) + bits(d);
}

Dyadic dyadic_pow2(long long e) {
  if (e >= 0) return Dyadic::from_bigint(BigInt(1) << static_cast<unsigned>(e));
  return Dyadic::rational(BigInt(1), BigInt(1) << static_cast<unsigned>(-e));
}

Abs2Bound abs2_of_difference(const Dyadic& x, const Dyadic& y) {
  try {
    return {(x - y).abs2(), true};
  } catch (const PrecisionError&) {
    long long horizon = 0;
    bool have = false;
    for (const Dyadic* p : {&x, &y}) {
      if (auto pr = p->precision()) {
        long long h = p->valuation() + *pr;
        horizon = have ? std::min(horizon, h) : h;
        have = true;
      }
    }
    return {Abs2::pow2(-horizon), false};
  }
}

bool sqrt_exists(const Dyadic& x) {
  if (x.is_zero()) throw DomainError("sqrt_exists: zero input");
  if (!x.is_exact() && *x.precision() < 3)
    throw PrecisionError("sqrt_exists: needs the first three digits");
  if (x.valuation() % 2 != 0) return false;
  return x.unit_mod8() == 1;
}

namespace {

// Odd y with y^2 = u (mod 2^k) and y = 1 (mod 4); requires u = 1 (mod 8).
BigInt sqrt_lift(const BigInt& u, long long k) {
  BigInt y = 1;
  for (long long bit = 3; bit < k; ++bit) {
    BigInt sq = mod_pow2(y * y, bit + 1);
    if (sq != mod_pow2(u, bit + 1)) y += BigInt(1) << static_cast<unsigned>(bit - 1);
  }
  return mod_pow2(y, k);
}

// Exact square root of a perfect-square rational, if any.
std::optional<BigRat> rational_sqrt(const BigRat& r) {
  if (r < 0) return std::nullopt;
  BigInt n = mp::numerator(r), d = mp::denominator(r);
  BigInt sn = mp::sqrt(n), sd = mp::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return BigRat(sn, sd);
}

}  // namespace

Dyadic dyadic_sqrt(const Dyadic& x, int prec) {
  if (!sqrt_exists(x)) throw DomainError("dyadic_sqrt: no square root in Q_2");
  long long v = x.valuation();
  if (x.is_exact()) {
    if (auto root = rational_sqrt(x.rat())) {
      Dyadic r = Dyadic::from_rat(*root);
      if (r.unit_mod(2) != 1) r = -r;  // canonical: unit = 1 (mod 4)
      if (!(r * r == x)) throw DomainError("dyadic_sqrt: verification failed");
      return r;
    }
  } else if (prec + 1 > *x.precision()) {
    throw PrecisionError("dyadic_sqrt: requested precision exceeds input precision");
  }
  // Digit-by-digit lift of the unit part: y mod 2^prec needs u mod 2^(prec+1).
  BigInt u = x.unit_mod(prec + 1);
  BigInt y = sqrt_lift(u, prec + 1);
  Dyadic r = Dyadic::approx(v / 2, mod_pow2(y, prec), prec);
  Dyadic sq = r * r;
  if (sq.valuation() != v || sq.unit_mod(prec) != x.unit_mod(prec))
    throw DomainError("dyadic_sqrt: verification failed");
  return r;
}

const char* to_string(SquareClass c) {
  switch (c) {
    case SquareClass::Square: return "Square";
    case SquareClass::NegOne: return "NegOne";
    case SquareClass::Two: return "Two";
    case SquareClass::NegTwo: return "NegTwo";
    case SquareClass::Three: return "Three";
    case SquareClass::NegThree: return "NegThree";
    case SquareClass::Six: return "Six";
    case SquareClass::NegSix: return "NegSix";
  }
  return "?";
}

long long square_class_representative(SquareClass c) {
  switch (c) {
    case SquareClass::Square: return 1;
    case SquareClass::NegOne: return -1;
    case SquareClass::Two: return 2;
    case SquareClass::NegTwo: return -2;
    case SquareClass::Three: return 3;
    case SquareClass::NegThree: return -3;
    case SquareClass::Six: return 6;
    case SquareClass::NegSix: return -6;
  }
  return 1;
}

SquareClass square_class(const Dyadic& x) {
  if (x.is_zero()) throw DomainError("square_class: zero input");
  bool odd_val = (x.valuation() % 2 + 2) % 2 == 1;
  switch (x.unit_mod8()) {
    case 1: return odd_val ? SquareClass::Two : SquareClass::Square;
    case 3: return odd_val ? SquareClass::Six : SquareClass::Three;
    case 5: return odd_val ? SquareClass::NegSix : SquareClass::NegThree;
    default: return odd_val ? SquareClass::NegTwo : SquareClass::NegOne;
  }
}

bool same_extension(const Dyadic& x, const Dyadic& y) { return sqrt_exists(x / y); }

}  // namespace dyadic
