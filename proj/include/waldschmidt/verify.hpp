#ifndef WALDSCHMIDT_VERIFY_HPP
#define WALDSCHMIDT_VERIFY_HPP

#include <waldschmidt/bounds.hpp>
#include <waldschmidt/rational.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace waldschmidt {

struct SweepResult {
  std::vector<std::string> violations;
  /// Findings that are expected and do not fail the sweep.
  std::vector<std::string> notes;

  bool passed() const { return violations.empty(); }
};

inline SweepResult verify_chudnovsky(std::int64_t s_max) {
  SweepResult out;
  for (const auto& v : chudnovsky_verify(s_max)) {
    out.violations.push_back("s=" + std::to_string(v.s) + (v.a ? " a=" + std::to_string(v.a) : "") + ": " + v.what);
  }
  return out;
}

/// floor(sqrt(2.5s)) for every s in [s_lo, s_hi]; the three known
/// exceptions and the attained small cases are reported as notes.
inline SweepResult verify_thm4(std::int64_t s_lo, std::int64_t s_hi, const Rational& tau) {
  SweepResult out;
  for (std::int64_t s = s_lo; s <= s_hi; ++s) {
    const Thm4Result r = thm4_holds(s, tau);
    if (r.method == Thm4Method::known_exception) {
      out.notes.push_back("s=" + std::to_string(s) + ": known exception");
    } else if (!r.holds && s <= 5 && small_alphahat(s) >= Rational(thm4_target(s))) {
      // The bound is attained exactly, which a strict emptiness certificate
      // cannot reach; the known value settles it.
      out.notes.push_back("s=" + std::to_string(s) + ": attained, alphahat=" + small_alphahat(s).str());
    } else if (!r.holds) {
      out.violations.push_back("s=" + std::to_string(s) + ": floor(sqrt(2.5s))=" + std::to_string(thm4_target(s)) +
                               " not certified (" + to_string(r.method) + ")");
    }
  }
  return out;
}

/// Cross-checks between the closed-form bounds, e_s and the small exact
/// values for every s <= s_max.
inline SweepResult verify_invariants(std::int64_t s_max, const Rational& precision) {
  SweepResult out;
  auto fail = [&](std::int64_t s, const std::string& what) {
    out.violations.push_back("s=" + std::to_string(s) + ": " + what);
  };
  std::int64_t prev_alpha = 0;
  for (std::int64_t s = 1; s <= s_max; ++s) {
    const std::int64_t t1 = thm1_bound(s);
    const std::int64_t t2 = thm2_bound(s);
    const std::int64_t t3 = thm3_bound(s);
    if (t1 < t2) fail(s, "thm1 bound below thm2 bound");

    const RootBracket e = expected_value(s, precision);
    const Rational ceiling = e.upper + precision;
    for (auto [name, v] : {std::pair{"thm1", t1}, std::pair{"thm2", t2}, std::pair{"thm3", t3}}) {
      if (Rational(v) > ceiling) fail(s, std::string(name) + " bound exceeds e_s");
    }
    if (chudnovsky_bound(s) > ceiling) fail(s, "Chudnovsky-type bound exceeds e_s");

    const std::int64_t a = alpha_max(s);
    if (a < prev_alpha) fail(s, "alpha_max decreased");
    if ((a + 2) * (a + 1) > 6 * s || (a + 3) * (a + 2) <= 6 * s) fail(s, "alpha_max not maximal");
    prev_alpha = a;

    if (s <= 5) {
      const Rational exact = small_alphahat(s);
      if (Rational(std::max({t1, t2, t3})) > exact || chudnovsky_bound(s) > exact) {
        fail(s, "lower bound above the known exact value");
      }
    }

    // Intersection points can only lower the largest root.
    for (std::int64_t k : {std::int64_t{1}, s, 2 * s}) {
      if (auto r = largest_root(CubicBound{s, k}, precision); r && r->lower > e.upper) {
        fail(s, "root with k=" + std::to_string(k) + " above e_s");
      }
    }
  }
  return out;
}

}  // namespace waldschmidt

#endif  // WALDSCHMIDT_VERIFY_HPP
