#ifndef WALDSCHMIDT_REPORT_HPP
#define WALDSCHMIDT_REPORT_HPP

#include <waldschmidt/bounds.hpp>
#include <waldschmidt/rational.hpp>
#include <waldschmidt/space_system.hpp>

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace waldschmidt {

inline constexpr const char* kVersion = "0.1.0";

enum class OutputFormat { csv, json, md };

inline OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  if (name == "md") return OutputFormat::md;
  throw std::invalid_argument("unknown format '" + name + "' (expected csv, json or md)");
}

struct RunConfig {
  Rational tau{1, 1000};
  Rational grid{1, 1000};
  Rational precision{1, 1'000'000};
  std::filesystem::path cache_path;
  OutputFormat format = OutputFormat::csv;

  void validate() const {
    if (tau.sign() <= 0) throw std::invalid_argument("tau must be positive");
    if (grid.sign() <= 0) throw std::invalid_argument("grid must be positive");
    if (precision.sign() <= 0) throw std::invalid_argument("precision must be positive");
  }
};

/// Entries of the Chudnovsky-type row of the reference comparison table.
inline std::optional<Rational> reference_chud_value(std::int64_t s) {
  switch (s) {
    case 10: return Rational(7, 2);
    case 20: return Rational(6);
    case 50: return Rational(8);
    case 100: return Rational(12);
    case 200: return Rational(17);
    case 300: return Rational(41, 2);
    case 400: return Rational(24);
    case 500: return Rational(27);
    default: return std::nullopt;
  }
}

/// All bounds known for one s.
struct BoundReport {
  std::int64_t s = 1;
  std::int64_t thm1_q = 0;  // approach1alg
  std::int64_t thm2_q = 0;  // approach1
  std::int64_t thm3_q = 0;  // approach2alg
  Rational chud_bound;
  std::optional<Rational> l_bound;
  Rational tau;
  Rational grid;
  RootBracket e_s;
  Rational precision;
  std::vector<std::string> flags;

  std::string chud_display() const {
    return chud_bound.is_integer() ? chud_bound.str() : chud_bound.to_decimal(1);
  }
  std::string l_display() const { return l_bound ? l_bound->to_decimal(decimals_for(grid)) : ""; }
  std::string e_display() const { return e_s.decimal(decimals_for(precision)); }

  friend bool operator==(const BoundReport& x, const BoundReport& y) {
    return x.s == y.s && x.thm1_q == y.thm1_q && x.thm2_q == y.thm2_q && x.thm3_q == y.thm3_q &&
           x.chud_bound == y.chud_bound && x.l_bound == y.l_bound && x.tau == y.tau && x.grid == y.grid &&
           x.e_s.lower == y.e_s.lower && x.e_s.upper == y.e_s.upper && x.e_s.exact == y.e_s.exact &&
           x.precision == y.precision && x.flags == y.flags;
  }
};

inline std::vector<std::string> report_flags(std::int64_t s) {
  std::vector<std::string> flags;
  if (is_thm4_exception(s)) flags.emplace_back("thm4_exception");
  if (auto ref = reference_chud_value(s); ref && *ref != chudnovsky_bound(s)) {
    flags.push_back("chud_reference_mismatch(reference=" + (ref->is_integer() ? ref->str() : ref->to_decimal(1)) + ")");
  }
  return flags;
}

/// Computes every bound for s. The degeneration scan starts at e_s rounded
/// up to the grid and is skipped when `with_l` is false.
inline BoundReport make_report(std::int64_t s, const RunConfig& cfg, bool with_l) {
  if (s < 1) throw std::invalid_argument("s must be positive");
  cfg.validate();
  BoundReport r;
  r.s = s;
  r.thm1_q = thm1_bound(s);
  r.thm2_q = thm2_bound(s);
  r.thm3_q = thm3_bound(s);
  r.chud_bound = chudnovsky_bound(s);
  r.tau = cfg.tau;
  r.grid = cfg.grid;
  r.precision = cfg.precision;
  r.e_s = expected_value(s, cfg.precision);
  if (with_l) {
    BestBoundOptions opts;
    opts.cap = r.e_s.upper;
    r.l_bound = best_bound(s, cfg.tau, cfg.grid, opts);
  }
  r.flags = report_flags(s);
  return r;
}

inline nlohmann::ordered_json to_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["s"] = r.s;
  j["thm_chud"] = {{"exact", r.chud_bound.str()}, {"decimal", r.chud_display()}};
  j["thm_approach1"] = r.thm2_q;
  j["thm_approach1alg"] = r.thm1_q;
  j["thm_approach2alg"] = r.thm3_q;
  if (r.l_bound) {
    j["algorithm_L"] = {{"exact", r.l_bound->str()}, {"decimal", r.l_display()}};
  } else {
    j["algorithm_L"] = nullptr;
  }
  j["tau"] = r.tau.str();
  j["grid"] = r.grid.str();
  j["e_s"] = {{"lower", r.e_s.lower.str()},
              {"upper", r.e_s.upper.str()},
              {"exact", r.e_s.exact},
              {"decimal", r.e_display()},
              {"precision", r.precision.str()}};
  j["flags"] = r.flags;
  return j;
}

inline BoundReport report_from_json(const nlohmann::ordered_json& j) {
  BoundReport r;
  r.s = j.at("s").get<std::int64_t>();
  r.chud_bound = Rational::parse(j.at("thm_chud").at("exact").get<std::string>());
  r.thm2_q = j.at("thm_approach1").get<std::int64_t>();
  r.thm1_q = j.at("thm_approach1alg").get<std::int64_t>();
  r.thm3_q = j.at("thm_approach2alg").get<std::int64_t>();
  if (!j.at("algorithm_L").is_null()) {
    r.l_bound = Rational::parse(j.at("algorithm_L").at("exact").get<std::string>());
  }
  r.tau = Rational::parse(j.at("tau").get<std::string>());
  r.grid = Rational::parse(j.at("grid").get<std::string>());
  const auto& e = j.at("e_s");
  r.e_s.lower = Rational::parse(e.at("lower").get<std::string>());
  r.e_s.upper = Rational::parse(e.at("upper").get<std::string>());
  r.e_s.exact = e.at("exact").get<bool>();
  r.precision = Rational::parse(e.at("precision").get<std::string>());
  r.flags = j.at("flags").get<std::vector<std::string>>();
  return r;
}

inline constexpr const char* kCsvHeader = "s,thm_chud,thm_approach1,thm_approach1alg,thm_approach2alg,algorithm_L,e_s";

inline std::string render_csv(const std::vector<BoundReport>& reports) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : reports) {
    out += std::to_string(r.s) + "," + r.chud_display() + "," + std::to_string(r.thm2_q) + "," +
           std::to_string(r.thm1_q) + "," + std::to_string(r.thm3_q) + "," + r.l_display() + "," +
           r.e_display() + "\n";
  }
  return out;
}

inline std::string render_json(const std::vector<BoundReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

/// One column per s, one row per bound source.
inline std::string render_md(const std::vector<BoundReport>& reports) {
  auto row = [&](const std::string& label, auto cell) {
    std::string line = "| " + label + " |";
    for (const auto& r : reports) line += " " + cell(r) + " |";
    return line + "\n";
  };
  std::string out = row("s", [](const BoundReport& r) { return std::to_string(r.s); });
  out += "|---|";
  for (std::size_t i = 0; i < reports.size(); ++i) out += "---|";
  out += "\n";
  out += row("Chudnovsky-type", [](const BoundReport& r) { return r.chud_display(); });
  out += row("floor(sqrt(2s-1))", [](const BoundReport& r) { return std::to_string(r.thm2_q); });
  out += row("(q-k)^2 <= s-k^2", [](const BoundReport& r) { return std::to_string(r.thm1_q); });
  out += row("qk <= s, (q-k)^2 <= s-k", [](const BoundReport& r) { return std::to_string(r.thm3_q); });
  out += row("algorithm L", [](const BoundReport& r) { return r.l_display(); });
  out += row("expected value e_s", [](const BoundReport& r) { return r.e_display(); });
  bool any_flag = false;
  for (const auto& r : reports) any_flag = any_flag || !r.flags.empty();
  if (any_flag) {
    out += row("flags", [](const BoundReport& r) {
      std::string joined;
      for (const auto& f : r.flags) joined += (joined.empty() ? "" : "; ") + f;
      return joined;
    });
  }
  return out;
}

inline std::string render(const std::vector<BoundReport>& reports, OutputFormat fmt) {
  switch (fmt) {
    case OutputFormat::csv: return render_csv(reports);
    case OutputFormat::json: return render_json(reports);
    case OutputFormat::md: return render_md(reports);
  }
  return {};
}

struct CacheKey {
  std::int64_t s = 1;
  Rational tau;
  Rational grid;
  Rational precision;
  bool with_l = true;
  std::string version = kVersion;

  static CacheKey of(std::int64_t s, const RunConfig& cfg, bool with_l) {
    return {s, cfg.tau, cfg.grid, cfg.precision, with_l, kVersion};
  }

  nlohmann::ordered_json to_json() const {
    return {{"s", s},
            {"tau", tau.str()},
            {"grid", grid.str()},
            {"precision", precision.str()},
            {"with_l", with_l},
            {"version", version}};
  }
};

/// Single JSON file of computed reports. Storing a key replaces any earlier
/// entry for it and rewrites the file; writes go through one mutex.
class ResultCache {
public:
  explicit ResultCache(std::filesystem::path path) : path_(std::move(path)) { load(); }

  const std::filesystem::path& path() const noexcept { return path_; }

  std::optional<BoundReport> find(const CacheKey& key) const {
    std::lock_guard lock(mutex_);
    const auto k = key.to_json();
    for (const auto& e : entries_) {
      if (e.at("key") == k) return report_from_json(e.at("value"));
    }
    return std::nullopt;
  }

  void store(const CacheKey& key, const BoundReport& report) {
    std::lock_guard lock(mutex_);
    const auto k = key.to_json();
    nlohmann::ordered_json entry = {{"key", k}, {"value", to_json(report)}, {"timestamp", now_utc()}};
    bool replaced = false;
    for (auto& e : entries_) {
      if (e.at("key") == k) {
        e = entry;
        replaced = true;
      }
    }
    if (!replaced) entries_.push_back(std::move(entry));
    save();
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
  }

private:
  void load() {
    if (path_.empty() || !std::filesystem::exists(path_)) return;
    std::ifstream in(path_);
    nlohmann::ordered_json doc;
    try {
      doc = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error&) {
      return;  // unreadable cache is treated as empty and overwritten
    }
    // Entries from other versions are dropped on the next write.
    if (!doc.is_object() || doc.value("version", "") != kVersion) return;
    for (const auto& e : doc.value("entries", nlohmann::ordered_json::array())) entries_.push_back(e);
  }

  void save() const {
    if (path_.empty()) return;
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    nlohmann::ordered_json doc = {{"version", kVersion}, {"entries", entries_}};
    const auto tmp = std::filesystem::path(path_.string() + ".tmp");
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << doc.dump(2) << "\n";
      if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, path_);
  }

  static std::string now_utc() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  std::filesystem::path path_;
  std::vector<nlohmann::ordered_json> entries_;
  mutable std::mutex mutex_;
};

/// make_report behind the cache.
inline BoundReport cached_report(std::int64_t s, const RunConfig& cfg, bool with_l, ResultCache* cache) {
  const CacheKey key = CacheKey::of(s, cfg, with_l);
  if (cache) {
    if (auto hit = cache->find(key)) return *hit;
  }
  BoundReport r = make_report(s, cfg, with_l);
  if (cache) cache->store(key, r);
  return r;
}

}  // namespace waldschmidt

#endif  // WALDSCHMIDT_REPORT_HPP
