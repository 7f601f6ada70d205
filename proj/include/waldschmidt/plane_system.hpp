#ifndef WALDSCHMIDT_PLANE_SYSTEM_HPP
#define WALDSCHMIDT_PLANE_SYSTEM_HPP

#include <waldschmidt/linform.hpp>
#include <waldschmidt/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace waldschmidt {

/// A run of equal multiplicities: `count` copies of `value`.
struct Multiplicity {
  LinForm value;
  std::size_t count = 1;

  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
};

/// Plane linear system L2(d(t); m_1(t), ..., m_r(t)) with the multiplicities
/// stored run-length encoded. Two systems compare equal when their expanded
/// multiplicity sequences agree.
struct PlaneSystem {
  LinForm degree;
  std::vector<Multiplicity> mults;

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& m : mults) n += m.count;
    return n;
  }

  std::vector<LinForm> expanded() const {
    std::vector<LinForm> out;
    out.reserve(size());
    for (const auto& m : mults) out.insert(out.end(), m.count, m.value);
    return out;
  }

  /// Drops empty runs and joins adjacent runs of the same value.
  PlaneSystem compacted() const {
    PlaneSystem out{degree, {}};
    for (const auto& m : mults) {
      if (m.count == 0) continue;
      if (!out.mults.empty() && out.mults.back().value == m.value) {
        out.mults.back().count += m.count;
      } else {
        out.mults.push_back(m);
      }
    }
    return out;
  }

  /// "L2(9+t; 7-2t, 2+3t, 1^30)".
  std::string str() const {
    std::string out = "L2(" + degree.str();
    const PlaneSystem c = compacted();
    for (std::size_t i = 0; i < c.mults.size(); ++i) {
      out += i == 0 ? "; " : ", ";
      out += c.mults[i].value.str();
      if (c.mults[i].count > 1) out += "^" + std::to_string(c.mults[i].count);
    }
    return out + ")";
  }

  friend bool operator==(const PlaneSystem& x, const PlaneSystem& y) {
    if (x.degree != y.degree) return false;
    return x.compacted().mults == y.compacted().mults;
  }
};

/// Input (delta; q_1, ..., q_s; p) of the plane reduction: the degree, the
/// multiplicities of lines placed on the quadric and the number of lines left
/// in general position.
struct TInput {
  Rational delta;
  std::vector<Rational> q;
  std::int64_t p = 0;

  /// Parses "delta;q1,q2,...;p", e.g. "7;1,1,1,1,1;15". The q list may be empty.
  static TInput parse(std::string_view text);
};

enum class TMove { cremona, merge, terminate };

inline const char* to_string(TMove m) {
  switch (m) {
    case TMove::cremona: return "cremona";
    case TMove::merge: return "merge";
    case TMove::terminate: return "terminate";
  }
  return "?";
}

struct TStep {
  PlaneSystem system;
  std::optional<LinForm> k;
  TMove move = TMove::terminate;
};

struct TTrace {
  std::vector<TStep> steps;
};

struct TResult {
  Rational t0;
  /// Terminal degree a+bt.
  LinForm final_degree;
  std::size_t step_count = 0;
  TTrace trace;
};

struct TOptions {
  std::size_t max_steps = 1'000'000;
  bool record_trace = true;
};

/// Thrown when a reduction loop exceeds its step cap. Both loops provably
/// terminate, so this points at a bug rather than at the input.
class IterationLimitExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// L2(2δ−q+(s−4)t; δ−2t, δ−q+(s−2)t, 1^(2p)) with q the sum of the q_j.
inline PlaneSystem associate_system(const TInput& in) {
  Rational q_sum;
  for (const auto& q : in.q) q_sum += q;
  const auto s = static_cast<std::int64_t>(in.q.size());

  PlaneSystem sys;
  sys.degree = LinForm(Rational(2) * in.delta - q_sum, Rational(s - 4));
  sys.mults.push_back({LinForm(in.delta, Rational(-2)), 1});
  sys.mults.push_back({LinForm(in.delta - q_sum, Rational(s - 2)), 1});
  if (in.p > 0) sys.mults.push_back({LinForm(1), static_cast<std::size_t>(2 * in.p)});
  return sys;
}

/// Removes multiplicities with value <= 0 at tau and sorts the rest
/// non-increasingly at tau (ties broken by coefficients).
inline PlaneSystem normalize(const PlaneSystem& sys, const Rational& tau) {
  struct Keyed {
    Rational at_tau;
    const Multiplicity* m;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(sys.mults.size());
  for (const auto& m : sys.mults) {
    if (m.count == 0) continue;
    Rational v = linform_eval(m.value, tau);
    if (v.sign() > 0) keyed.push_back({std::move(v), &m});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& x, const Keyed& y) {
    if (auto c = x.at_tau <=> y.at_tau; c != 0) return c > 0;
    if (auto c = x.m->value.a <=> y.m->value.a; c != 0) return c > 0;
    return x.m->value.b > y.m->value.b;
  });
  PlaneSystem out{sys.degree, {}};
  out.mults.reserve(keyed.size());
  for (const auto& k : keyed) {
    if (!out.mults.empty() && out.mults.back().value == k.m->value) {
      out.mults.back().count += k.m->count;
    } else {
      out.mults.push_back(*k.m);
    }
  }
  return out;
}

/// Degree minus the three greatest multiplicities; nothing when fewer than
/// three remain.
inline std::optional<LinForm> cremona_k(const PlaneSystem& sys) {
  LinForm k = sys.degree;
  std::size_t taken = 0;
  for (const auto& m : sys.mults) {
    const std::size_t use = std::min<std::size_t>(m.count, 3 - taken);
    k -= m.value * Rational(static_cast<std::int64_t>(use));
    taken += use;
    if (taken == 3) return k;
  }
  return std::nullopt;
}

/// Adds k to the degree and to the first three multiplicities. The modified
/// entries are placed first, the untouched ones follow in their old order;
/// the result is not re-normalized.
inline PlaneSystem apply_cremona(const PlaneSystem& sys, const LinForm& k) {
  if (sys.size() < 3) throw std::invalid_argument("apply_cremona: fewer than three multiplicities");
  PlaneSystem out{sys.degree + k, {}};
  std::vector<Multiplicity> rest;
  std::size_t taken = 0;
  for (const auto& m : sys.mults) {
    const std::size_t use = std::min<std::size_t>(m.count, 3 - taken);
    if (use > 0) out.mults.push_back({m.value + k, use});
    if (m.count > use) rest.push_back({m.value, m.count - use});
    taken += use;
  }
  out.mults.insert(out.mults.end(), rest.begin(), rest.end());
  return out.compacted();
}

namespace detail {

// merge_four on a system that is already normalized.
inline std::optional<PlaneSystem> merge_four_sorted(const PlaneSystem& sys, const Rational& tau) {
  for (std::size_t i = 0; i < sys.mults.size(); ++i) {
    if (sys.mults[i].count < 4) continue;
    PlaneSystem out = sys;
    out.mults[i].count -= 4;
    out.mults.push_back({sys.mults[i].value * Rational(2), 1});
    return normalize(out, tau);
  }
  return std::nullopt;
}

}  // namespace detail

/// Replaces four equal multiplicities by one of twice the value, choosing the
/// greatest such value at tau. Nothing when no value occurs four times.
inline std::optional<PlaneSystem> merge_four(const PlaneSystem& sys, const Rational& tau) {
  return detail::merge_four_sorted(normalize(sys, tau), tau);
}

/// Output formula applied to the terminal degree a+bt.
inline Rational t0_from_degree(const LinForm& degree, const std::vector<Rational>& q) {
  if (degree.a.sign() >= 0 || q.empty()) return Rational(0);
  const Rational q_min = *std::min_element(q.begin(), q.end());
  if (degree.b.sign() <= 0) return q_min;
  return min(-degree.a / degree.b, q_min);
}

/// Runs the plane reduction on the system associated with `in` and returns
/// the threshold t0: the associated system is stably empty for 0 <= t < t0.
inline TResult run_t(const TInput& in, const Rational& tau, const TOptions& opts = {}) {
  if (tau.sign() <= 0) throw std::invalid_argument("run_t: tau must be positive");
  if (in.delta.sign() <= 0) throw std::invalid_argument("run_t: delta must be positive");
  if (in.p < 0) throw std::invalid_argument("run_t: p must be nonnegative");

  TResult result;
  PlaneSystem sys = normalize(associate_system(in), tau);
  auto record = [&](std::optional<LinForm> k, TMove move) {
    if (opts.record_trace) result.trace.steps.push_back({sys, std::move(k), move});
  };

  for (std::size_t step = 0;; ++step) {
    if (step >= opts.max_steps) {
      throw IterationLimitExceeded("run_t: exceeded " + std::to_string(opts.max_steps) + " steps");
    }
    std::optional<LinForm> k = cremona_k(sys);
    if (k && linform_eval(*k, tau).sign() < 0) {
      record(k, TMove::cremona);
      sys = normalize(apply_cremona(sys, *k), tau);
      continue;
    }
    if (auto merged = detail::merge_four_sorted(sys, tau)) {
      record(k, TMove::merge);
      sys = std::move(*merged);
      continue;
    }
    record(k, TMove::terminate);
    result.step_count = step + 1;
    break;
  }
  result.final_degree = sys.degree;
  result.t0 = t0_from_degree(sys.degree, in.q);
  return result;
}

/// Checks that every recorded step follows from its predecessor by the
/// declared move and that only the last step terminates.
inline bool replay_trace(const TTrace& trace, const Rational& tau) {
  const auto& steps = trace.steps;
  if (steps.empty()) return false;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const TStep& cur = steps[i];
    if (normalize(cur.system, tau) != cur.system) return false;
    if (cremona_k(cur.system) != cur.k) return false;
    const bool last = i + 1 == steps.size();
    if (last != (cur.move == TMove::terminate)) return false;
    if (last) break;
    const PlaneSystem& next = steps[i + 1].system;
    switch (cur.move) {
      case TMove::cremona:
        if (!cur.k || linform_eval(*cur.k, tau).sign() >= 0) return false;
        if (normalize(apply_cremona(cur.system, *cur.k), tau) != next) return false;
        break;
      case TMove::merge: {
        auto merged = merge_four(cur.system, tau);
        if (!merged || *merged != next) return false;
        break;
      }
      case TMove::terminate:
        return false;
    }
  }
  return true;
}

/// One line of the textual trace: "L2(9+t; 7-2t, 2+3t, 1^30)  k=-1".
inline std::string format_step(const TStep& step) {
  std::string line = step.system.str();
  if (step.k) line += "  k=" + step.k->str();
  return line;
}

inline std::string format_trace(const TResult& r) {
  std::string out;
  for (const auto& step : r.trace.steps) out += format_step(step) + "\n";
  out += "t0 = " + r.t0.str() + "\n";
  return out;
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

/// Parses a rational field located at `offset` in the original input,
/// re-basing error positions onto the whole input.
inline Rational parse_rational_field(std::string_view field, std::size_t offset) {
  try {
    return Rational::parse(field);
  } catch (const ParseError& e) {
    throw ParseError("invalid rational '" + std::string(field) + "'", offset + e.position());
  }
}

inline std::int64_t parse_count_field(std::string_view field, std::size_t offset) {
  if (field.empty()) throw ParseError("expected a nonnegative integer", offset);
  std::int64_t v = 0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (!is_digit(field[i])) throw ParseError("expected a nonnegative integer", offset + i);
    if (v > (INT64_MAX - 9) / 10) throw ParseError("integer too large", offset + i);
    v = v * 10 + (field[i] - '0');
  }
  return v;
}

}  // namespace detail

inline TInput TInput::parse(std::string_view text) {
  const auto parts = detail::split(text, ';');
  if (parts.size() != 3) throw ParseError("expected 'delta;q1,...,qs;p'", text.size());
  TInput in;
  std::size_t offset = 0;
  in.delta = detail::parse_rational_field(parts[0], offset);
  offset += parts[0].size() + 1;
  if (!parts[1].empty()) {
    std::size_t field_offset = offset;
    for (auto field : detail::split(parts[1], ',')) {
      in.q.push_back(detail::parse_rational_field(field, field_offset));
      field_offset += field.size() + 1;
    }
  }
  offset += parts[1].size() + 1;
  in.p = detail::parse_count_field(parts[2], offset);
  if (in.delta.sign() <= 0) throw ParseError("delta must be positive", 0);
  for (const auto& q : in.q) {
    if (q.sign() <= 0) throw ParseError("specialized multiplicities must be positive", parts[0].size() + 1);
  }
  return in;
}

}  // namespace waldschmidt

#endif  // WALDSCHMIDT_PLANE_SYSTEM_HPP
