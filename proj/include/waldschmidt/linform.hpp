#ifndef WALDSCHMIDT_LINFORM_HPP
#define WALDSCHMIDT_LINFORM_HPP

#include <waldschmidt/rational.hpp>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace waldschmidt {

/// Linear polynomial a + b*t over the rationals.
struct LinForm {
  Rational a;  // constant term
  Rational b;  // coefficient of t

  LinForm() = default;
  LinForm(Rational constant) : a(std::move(constant)) {}  // NOLINT(google-explicit-constructor)
  LinForm(std::int64_t constant) : a(constant) {}          // NOLINT(google-explicit-constructor)
  LinForm(Rational constant, Rational slope) : a(std::move(constant)), b(std::move(slope)) {}

  /// Parses "a", "bt", "a+bt" or "a-bt" with rational coefficients.
  static LinForm parse(std::string_view text);

  bool is_constant() const noexcept { return b.is_zero(); }

  std::string str() const;

  LinForm operator-() const { return {-a, -b}; }
  LinForm& operator+=(const LinForm& o) { a += o.a; b += o.b; return *this; }
  LinForm& operator-=(const LinForm& o) { a -= o.a; b -= o.b; return *this; }
  LinForm& operator*=(const Rational& c) { a *= c; b *= c; return *this; }

  friend LinForm operator+(LinForm f, const LinForm& g) { return f += g; }
  friend LinForm operator-(LinForm f, const LinForm& g) { return f -= g; }
  friend LinForm operator*(LinForm f, const Rational& c) { return f *= c; }
  friend LinForm operator*(const Rational& c, LinForm f) { return f *= c; }

  /// Polynomial equality.
  friend bool operator==(const LinForm&, const LinForm&) = default;

  friend std::ostream& operator<<(std::ostream& os, const LinForm& f) { return os << f.str(); }
};

/// The monomial t.
inline LinForm t_var() { return {Rational(0), Rational(1)}; }

inline Rational linform_eval(const LinForm& f, const Rational& x) { return f.a + f.b * x; }

/// Orders f and g by their value at tau.
inline std::strong_ordering tau_compare(const LinForm& f, const LinForm& g, const Rational& tau) {
  return linform_eval(f, tau) <=> linform_eval(g, tau);
}

/// The root -a/b, or nothing for a constant form.
inline std::optional<Rational> linform_root(const LinForm& f) {
  if (f.b.is_zero()) return std::nullopt;
  return -f.a / f.b;
}

/// Strict "sorts before" relation for non-increasing order at tau. Forms with
/// equal value at tau fall back to (a, b) descending, so the order is total
/// and polynomial-equal forms end up adjacent.
inline bool tau_sorts_before(const LinForm& f, const LinForm& g, const Rational& tau) {
  if (auto c = tau_compare(f, g, tau); c != 0) return c > 0;
  if (auto c = f.a <=> g.a; c != 0) return c > 0;
  return f.b > g.b;
}

inline std::string LinForm::str() const {
  std::string slope;
  if (b == Rational(1)) {
    slope = "t";
  } else if (b == Rational(-1)) {
    slope = "-t";
  } else if (!b.is_zero()) {
    slope = b.str() + "t";
  }
  if (a.is_zero()) return slope.empty() ? "0" : slope;
  if (slope.empty()) return a.str();
  return a.str() + (b.sign() > 0 ? "+" : "") + slope;
}

namespace detail {

// One signed term: [sign] (rational [t] | t). Returns the term and whether it
// carried the variable.
inline std::pair<Rational, bool> read_term(std::string_view text, std::size_t& pos, bool sign_required) {
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  } else if (sign_required) {
    throw ParseError("expected '+' or '-'", pos);
  }
  Rational value(1);
  bool has_number = false;
  if (pos < text.size() && is_digit(text[pos])) {
    value = read_unsigned_rational(text, pos, 0);
    has_number = true;
  }
  bool has_t = false;
  if (pos < text.size() && text[pos] == 't') {
    has_t = true;
    ++pos;
  }
  if (!has_number && !has_t) {
    if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
    throw ParseError("unexpected character '" + std::string(1, text[pos]) + "'", pos);
  }
  return {negative ? -value : value, has_t};
}

}  // namespace detail

inline LinForm LinForm::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty linear form", 0);
  std::size_t pos = 0;
  auto [first, first_t] = detail::read_term(text, pos, false);
  LinForm f;
  (first_t ? f.b : f.a) = first;
  if (pos < text.size()) {
    if (first_t) throw ParseError("constant term must precede the t term", pos);
    auto [second, second_t] = detail::read_term(text, pos, true);
    if (!second_t) throw ParseError("second term must contain t", pos);
    f.b = second;
  }
  if (pos != text.size()) throw ParseError("unexpected character '" + std::string(1, text[pos]) + "'", pos);
  return f;
}

}  // namespace waldschmidt

#endif  // WALDSCHMIDT_LINFORM_HPP
