#ifndef WALDSCHMIDT_SPACE_SYSTEM_HPP
#define WALDSCHMIDT_SPACE_SYSTEM_HPP

#include <waldschmidt/plane_system.hpp>
#include <waldschmidt/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace waldschmidt {

/// (δ; q_1..q_s on the quadric | 1^p in general position).
struct SpaceSystem {
  Rational delta;
  std::vector<Rational> specialized;
  std::int64_t p = 0;

  /// "(10096/5045; 3/5045,3/5045,3/5045 | 1^5)".
  std::string str() const {
    std::string out = "(" + delta.str() + ";";
    for (std::size_t i = 0; i < specialized.size(); ++i) {
      out += i == 0 ? " " : ",";
      out += specialized[i].str();
    }
    out += " |";
    if (p == 1) out += " 1";
    if (p > 1) out += " 1^" + std::to_string(p);
    return out + ")";
  }

  friend bool operator==(const SpaceSystem&, const SpaceSystem&) = default;
};

enum class LMove { subtract, specialize, terminate_yes, terminate_no };

inline const char* to_string(LMove m) {
  switch (m) {
    case LMove::subtract: return "subtract";
    case LMove::specialize: return "specialize";
    case LMove::terminate_yes: return "terminate-yes";
    case LMove::terminate_no: return "terminate-no";
  }
  return "?";
}

struct LStep {
  SpaceSystem system;
  /// Threshold computed for this system; absent when the plane reduction was
  /// not run (exit check fired, or no line lies on the quadric yet).
  std::optional<Rational> t0;
  LMove move = LMove::terminate_no;
};

struct LResult {
  bool yes = false;
  std::vector<LStep> trace;
  std::size_t step_count = 0;
};

struct LOptions {
  std::size_t max_steps = 1'000'000;
  std::size_t max_t_steps = 1'000'000;
  bool record_trace = true;
};

/// Plane data fed to the reduction when (delta; specialized | 1^p) is
/// restricted to the quadric.
inline TInput restrict_to_quadric(const Rational& delta, const std::vector<Rational>& specialized, std::int64_t p) {
  return TInput{delta, specialized, p};
}

/// Exit condition of the degeneration loop: the system cannot be
/// semi-effective.
inline bool certifies_empty(const SpaceSystem& sys) {
  if (sys.delta.sign() <= 0) return true;
  if (sys.delta < Rational(1) && sys.p >= 1) return true;
  return std::any_of(sys.specialized.begin(), sys.specialized.end(),
                     [&](const Rational& q) { return sys.delta < q; });
}

/// Whether the quadric is split off with multiplicity t0. Besides t0 >= tau
/// this also fires when t0 is positive and wipes out at least one line on the
/// quadric; that case shrinks the specialized list, so it happens at most s
/// times and the loop still terminates.
inline bool subtraction_fires(const Rational& t0, const std::vector<Rational>& specialized, const Rational& tau) {
  if (t0 >= tau) return true;
  if (t0.sign() <= 0 || specialized.empty()) return false;
  return t0 >= *std::min_element(specialized.begin(), specialized.end());
}

/// Iterated quadric degeneration starting from (delta; 1^s). A "yes" answer
/// certifies that the Waldschmidt constant of s very general lines is at
/// least delta.
inline LResult run_l(const Rational& delta, std::int64_t s, const Rational& tau, const LOptions& opts = {}) {
  if (delta.sign() <= 0) throw std::invalid_argument("run_l: delta must be positive");
  if (tau.sign() <= 0) throw std::invalid_argument("run_l: tau must be positive");
  if (s < 1) throw std::invalid_argument("run_l: s must be positive");

  LResult result;
  SpaceSystem sys{delta, {}, s};
  auto record = [&](std::optional<Rational> t0, LMove move) {
    if (opts.record_trace) result.trace.push_back({sys, std::move(t0), move});
  };
  const TOptions t_opts{opts.max_t_steps, false};

  for (std::size_t step = 0;; ++step) {
    if (step >= opts.max_steps) {
      throw IterationLimitExceeded("run_l: exceeded " + std::to_string(opts.max_steps) + " steps");
    }
    if (certifies_empty(sys)) {
      record(std::nullopt, LMove::terminate_yes);
      result.yes = true;
      result.step_count = step + 1;
      return result;
    }

    // With nothing on the quadric the threshold is 0, so the reduction is skipped.
    std::optional<Rational> t0;
    if (!sys.specialized.empty()) {
      t0 = run_t(restrict_to_quadric(sys.delta, sys.specialized, sys.p), tau, t_opts).t0;
    }

    if (t0 && subtraction_fires(*t0, sys.specialized, tau)) {
      record(t0, LMove::subtract);
      sys.delta -= Rational(2) * *t0;
      std::vector<Rational> kept;
      kept.reserve(sys.specialized.size());
      for (const auto& q : sys.specialized) {
        Rational r = q - *t0;
        if (r.sign() > 0) kept.push_back(std::move(r));
      }
      sys.specialized = std::move(kept);
      continue;
    }
    if (sys.p > 0) {
      record(t0, LMove::specialize);
      sys.specialized.emplace_back(1);
      --sys.p;
      continue;
    }
    record(t0, LMove::terminate_no);
    result.step_count = step + 1;
    return result;
  }
}

/// "(4; 1,1,1 | 1^5)  t0=4/7" per step, then "yes" or "no".
inline std::string format_trace(const LResult& r) {
  std::string out;
  for (const auto& step : r.trace) {
    out += step.system.str();
    if (step.t0) out += "  t0=" + step.t0->str();
    out += "\n";
  }
  out += r.yes ? "yes\n" : "no\n";
  return out;
}

struct BestBoundOptions {
  /// Start of the downward scan; rounded up to the grid.
  Rational cap;
  LOptions l_opts{1'000'000, 1'000'000, false};
};

/// Scans delta downward from the cap in steps of `grid` and returns the first
/// value for which run_l answers yes. Every delta < 1 is certified trivially,
/// so 1 is returned when nothing above 1 succeeds.
inline Rational best_bound(std::int64_t s, const Rational& tau, const Rational& grid, const BestBoundOptions& opts) {
  if (grid.sign() <= 0) throw std::invalid_argument("best_bound: grid must be positive");
  const Rational one(1);
  Rational delta = Rational(mpq_class((opts.cap / grid).ceil())) * grid;
  for (; delta > one; delta -= grid) {
    if (run_l(delta, s, tau, opts.l_opts).yes) return delta;
  }
  return one;
}

}  // namespace waldschmidt

#endif  // WALDSCHMIDT_SPACE_SYSTEM_HPP
