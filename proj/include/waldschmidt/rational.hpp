#ifndef WALDSCHMIDT_RATIONAL_HPP
#define WALDSCHMIDT_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace waldschmidt {

/// Raised when a textual literal cannot be parsed. `position` is the
/// zero-based offset of the offending character in the input.
class ParseError : public std::invalid_argument {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// Exact rational number over arbitrary-precision integers.
///
/// The value is kept in lowest terms with a positive denominator after every
/// operation.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t n) : v_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p" or "p/q" with an optional leading sign.
  static Rational parse(std::string_view text);

  const mpq_class& raw() const noexcept { return v_; }

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  int sign() const noexcept { return sgn(v_); }
  bool is_zero() const noexcept { return sign() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  /// Largest integer not exceeding the value.
  mpz_class floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }
  /// Smallest integer not below the value.
  mpz_class ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }

  /// "p" for integers, "p/q" otherwise.
  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  /// Decimal rendering with `digits` fractional digits, rounded half to even.
  std::string to_decimal(unsigned digits) const;

  /// Lossy conversion for diagnostics only.
  double to_double() const { return v_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
  mpq_class v_;
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

/// 10^-digits as an exact rational.
inline Rational pow10_inverse(unsigned digits) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, digits);
  return Rational(mpq_class(mpz_class(1), den));
}

/// Smallest d with 10^-d <= tolerance, i.e. the number of decimals a
/// tolerance asks for.
inline unsigned decimals_for(const Rational& tolerance) {
  if (tolerance.sign() <= 0) throw std::invalid_argument("tolerance must be positive");
  unsigned d = 0;
  while (pow10_inverse(d) > tolerance) ++d;
  return d;
}

namespace detail {

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

/// Reads an unsigned digit run starting at `pos`; advances `pos`.
inline std::string read_digits(std::string_view text, std::size_t& pos) {
  const std::size_t start = pos;
  while (pos < text.size() && is_digit(text[pos])) ++pos;
  return std::string(text.substr(start, pos - start));
}

/// Reads an unsigned "p" or "p/q" literal starting at `pos`.
inline Rational read_unsigned_rational(std::string_view text, std::size_t& pos, std::size_t offset) {
  const std::string num = read_digits(text, pos);
  if (num.empty()) throw ParseError("expected digits", offset + pos);
  mpz_class n(num, 10);
  mpz_class d(1);
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    const std::size_t den_pos = pos;
    const std::string den = read_digits(text, pos);
    if (den.empty()) throw ParseError("expected denominator digits", offset + den_pos);
    d = mpz_class(den, 10);
    if (d == 0) throw ParseError("zero denominator", offset + den_pos);
  }
  return Rational(mpq_class(n, d));
}

}  // namespace detail

inline Rational Rational::parse(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  Rational r = detail::read_unsigned_rational(text, pos, 0);
  if (pos != text.size()) throw ParseError("unexpected character '" + std::string(1, text[pos]) + "'", pos);
  return negative ? -r : r;
}

inline std::string Rational::to_decimal(unsigned digits) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  const mpq_class scaled = v_ * scale;
  // Nearest integer to `scaled`, ties to even.
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  const int half = cmp(mpz_class(2 * r), scaled.get_den());
  if (half > 0 || (half == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;

  const bool negative = q < 0;
  std::string body = (negative ? mpz_class(-q) : q).get_str();
  if (digits > 0) {
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
  }
  return negative ? "-" + body : body;
}

}  // namespace waldschmidt

template <>
struct std::hash<waldschmidt::Rational> {
  std::size_t operator()(const waldschmidt::Rational& r) const {
    return std::hash<std::string>{}(r.str());
  }
};

#endif  // WALDSCHMIDT_RATIONAL_HPP
