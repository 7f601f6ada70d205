#ifndef WALDSCHMIDT_BOUNDS_HPP
#define WALDSCHMIDT_BOUNDS_HPP

#include <waldschmidt/rational.hpp>
#include <waldschmidt/space_system.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace waldschmidt {

/// floor(sqrt(n)) by integer Newton iteration.
inline std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::domain_error("isqrt: negative argument");
  if (n < 2) return n;
  std::int64_t x = n;
  std::int64_t y = x / 2 + (x & 1);
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  return x;
}

namespace detail {
inline void require_positive(std::int64_t s, const char* who) {
  if (s < 1) throw std::invalid_argument(std::string(who) + ": s must be positive");
}
}  // namespace detail

/// Largest q such that (q-k)^2 <= s-k^2 for some 1 <= k <= floor(sqrt(s)).
inline std::int64_t thm1_bound(std::int64_t s) {
  detail::require_positive(s, "thm1_bound");
  std::int64_t best = 0;
  for (std::int64_t k = 1; k * k <= s; ++k) best = std::max(best, k + isqrt(s - k * k));
  return best;
}

/// floor(sqrt(2s-1)).
inline std::int64_t thm2_bound(std::int64_t s) {
  detail::require_positive(s, "thm2_bound");
  return isqrt(2 * s - 1);
}

/// Largest q such that some k >= 0 has qk <= s and (q-k)^2 <= s-k.
///
/// For fixed k the admissible q form the interval [k-r, min(k+r, s/k)] with
/// r = isqrt(s-k). Any k above sqrt(s) caps q below sqrt(s), which k = 0
/// already reaches, so k stays in 0..isqrt(s).
inline std::int64_t thm3_bound(std::int64_t s) {
  detail::require_positive(s, "thm3_bound");
  std::int64_t best = isqrt(s);
  const std::int64_t k_max = isqrt(s);
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const std::int64_t r = isqrt(s - k);
    const std::int64_t q = std::min(k + r, s / k);
    if (q >= k - r) best = std::max(best, q);
  }
  return best;
}

/// Largest a >= 1 with (a+2)(a+1) <= 6s: the initial degree allowed by
/// counting conditions.
inline std::int64_t alpha_max(std::int64_t s) {
  detail::require_positive(s, "alpha_max");
  std::int64_t a = 1;
  while ((a + 3) * (a + 2) <= 6 * s) ++a;
  return a;
}

/// (alpha_max(s) + 1) / 2.
inline Rational chudnovsky_bound(std::int64_t s) { return Rational(alpha_max(s) + 1, 2); }

struct ChudnovskyViolation {
  std::int64_t s = 0;
  /// Initial degree under test, or 0 for the bound comparison itself.
  std::int64_t a = 0;
  std::string what;
};

/// Checks, for every s <= s_max, that the best closed-form lower bound
/// reaches (alpha_max(s)+1)/2, and that for every a >= 10 with
/// (a+2)(a+1) <= 6s the inequality sqrt(2s-1) - 1 >= (a+1)/2 holds together
/// with floor(sqrt(2s-1)) >= (a+1)/2.
inline std::vector<ChudnovskyViolation> chudnovsky_verify(std::int64_t s_max) {
  detail::require_positive(s_max, "chudnovsky_verify");
  std::vector<ChudnovskyViolation> out;
  for (std::int64_t s = 1; s <= s_max; ++s) {
    const std::int64_t best = std::max({thm1_bound(s), thm2_bound(s), thm3_bound(s)});
    if (Rational(best) < chudnovsky_bound(s)) {
      out.push_back({s, 0, "best lower bound " + std::to_string(best) + " < " + chudnovsky_bound(s).str()});
    }
    for (std::int64_t a = 10; (a + 2) * (a + 1) <= 6 * s; ++a) {
      // sqrt(2s-1) - 1 >= (a+1)/2  <=>  4(2s-1) >= (a+3)^2, both sides nonnegative.
      const Rational lhs = Rational(4) * Rational(2 * s - 1);
      const Rational rhs = Rational((a + 3) * (a + 3));
      if (lhs < rhs) out.push_back({s, a, "sqrt(2s-1) - 1 < (a+1)/2"});
      if (8 * s < a * a + 6 * a + 13) out.push_back({s, a, "8s < a^2 + 6a + 13"});
      if (Rational(thm2_bound(s)) < Rational(a + 1, 2)) out.push_back({s, a, "floor(sqrt(2s-1)) < (a+1)/2"});
    }
  }
  return out;
}

enum class Thm4Method { closed_form, algorithm_l, known_exception };

inline const char* to_string(Thm4Method m) {
  switch (m) {
    case Thm4Method::closed_form: return "closed-form";
    case Thm4Method::algorithm_l: return "algorithm-L";
    case Thm4Method::known_exception: return "known-exception";
  }
  return "?";
}

struct Thm4Result {
  bool holds = false;
  Thm4Method method = Thm4Method::closed_form;
};

/// floor(sqrt(2.5 s)).
inline std::int64_t thm4_target(std::int64_t s) { return isqrt(5 * s / 2); }

inline bool is_thm4_exception(std::int64_t s) { return s == 4 || s == 7 || s == 10; }

/// thm3 conditions with q = floor(sqrt(2.5s)) and k = floor(sqrt(0.4s)).
inline bool thm4_closed_form(std::int64_t s) {
  const std::int64_t q = thm4_target(s);
  const std::int64_t k = isqrt(2 * s / 5);
  return q * k <= s && (q - k) * (q - k) <= s - k;
}

/// Whether floor(sqrt(2.5 s)) is certified as a lower bound: in closed form
/// from s = 490 on, by the degeneration algorithm below that.
inline Thm4Result thm4_holds(std::int64_t s, const Rational& tau, const LOptions& opts = {1'000'000, 1'000'000, false}) {
  detail::require_positive(s, "thm4_holds");
  if (is_thm4_exception(s)) return {false, Thm4Method::known_exception};
  if (s >= 490) return {thm4_closed_form(s), Thm4Method::closed_form};
  return {run_l(Rational(thm4_target(s)), s, tau, opts).yes, Thm4Method::algorithm_l};
}

/// t^3 - 3st + 2s + 2k: the asymptotic Hilbert polynomial of s lines with k
/// simple intersection points.
struct CubicBound {
  std::int64_t s = 1;
  std::int64_t k = 0;

  Rational constant() const { return Rational(2 * s + 2 * k); }

  Rational eval(const Rational& t) const {
    return t * t * t - Rational(3 * s) * t + constant();
  }
};

/// Interval [lower, upper] holding the root; lower == upper when exact.
struct RootBracket {
  Rational lower;
  Rational upper;
  bool exact = false;

  Rational midpoint() const { return (lower + upper) / Rational(2); }
  std::string decimal(unsigned digits) const { return midpoint().to_decimal(digits); }
};

/// Largest real root of the cubic, bracketed to width < precision by exact
/// bisection. Nothing when the cubic has no root at or above sqrt(s)
/// (then all its real roots are negative).
inline std::optional<RootBracket> largest_root(const CubicBound& c, const Rational& precision) {
  detail::require_positive(c.s, "largest_root");
  if (c.k < 0) throw std::invalid_argument("largest_root: k must be nonnegative");
  if (precision.sign() <= 0) throw std::invalid_argument("largest_root: precision must be positive");

  // The cubic decreases on [0, sqrt(s)] and increases after, with local
  // minimum c0 - 2s*sqrt(s). Its sign is that of c0^2 - 4s^3.
  const mpz_class c0 = 2 * c.s + 2 * c.k;
  const mpz_class s_big = c.s;
  const int local_min = cmp(mpz_class(c0 * c0), mpz_class(4 * s_big * s_big * s_big));
  if (local_min > 0) return std::nullopt;
  if (local_min == 0) {
    const Rational root = Rational(mpq_class(c0, mpz_class(2 * s_big)));
    return RootBracket{root, root, true};
  }

  // A point at or above sqrt(s) where the cubic is negative.
  Rational below_sqrt(isqrt(c.s));
  Rational lo(isqrt(c.s) + 1);
  while (c.eval(lo).sign() >= 0) {
    const Rational mid = (below_sqrt + lo) / Rational(2);
    if (mid * mid >= Rational(c.s)) {
      lo = mid;
    } else {
      below_sqrt = mid;
    }
  }
  // Past sqrt(3s) the cubic is positive.
  Rational hi(isqrt(3 * c.s) + 1);

  const Rational width = min(precision, Rational(1, 2));
  while (hi - lo >= width) {
    const Rational mid = (lo + hi) / Rational(2);
    const int sg = c.eval(mid).sign();
    if (sg == 0) return RootBracket{mid, mid, true};
    (sg < 0 ? lo : hi) = mid;
  }
  // Rational roots of a monic integer cubic are integers.
  for (mpz_class n = lo.ceil(); Rational(mpq_class(n)) <= hi; ++n) {
    const Rational r{mpq_class(n)};
    if (c.eval(r).is_zero()) return RootBracket{r, r, true};
  }
  return RootBracket{lo, hi, false};
}

/// e_s: the largest root of t^3 - 3st + 2s.
inline RootBracket expected_value(std::int64_t s, const Rational& precision) {
  return *largest_root(CubicBound{s, 0}, precision);
}

/// Exact Waldschmidt constants known for s = 1..5.
inline Rational small_alphahat(std::int64_t s) {
  switch (s) {
    case 1: return Rational(1);
    case 2: return Rational(2);
    case 3: return Rational(2);
    case 4: return Rational(8, 3);
    case 5: return Rational(10, 3);
    default: throw std::out_of_range("small_alphahat: s must lie in 1..5");
  }
}

}  // namespace waldschmidt

#endif  // WALDSCHMIDT_BOUNDS_HPP
