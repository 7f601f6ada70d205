// Command-line front end: bound reports, traces, tables and verification
// sweeps.

#include <waldschmidt/waldschmidt.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace ws = waldschmidt;

namespace {

ws::Rational positive_rational(const std::string& text, const char* name) {
  ws::Rational r = ws::Rational::parse(text);
  if (r.sign() <= 0) throw std::invalid_argument(std::string(name) + " must be positive");
  return r;
}

std::filesystem::path default_cache_path() {
  if (const char* env = std::getenv("WALDSCHMIDT_CACHE"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "waldschmidt" / "cache.json";
  }
  return "waldschmidt-cache.json";
}

// "delta;s", e.g. "4;8".
std::pair<ws::Rational, std::int64_t> parse_l_input(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw ws::ParseError("expected 'delta;s'", text.size());
  ws::Rational delta;
  try {
    delta = ws::Rational::parse(std::string_view(text).substr(0, semi));
  } catch (const ws::ParseError& e) {
    throw ws::ParseError("invalid delta", e.position());
  }
  const std::string rest = text.substr(semi + 1);
  if (rest.empty()) throw ws::ParseError("expected s", semi + 1);
  std::int64_t s = 0;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (rest[i] < '0' || rest[i] > '9') throw ws::ParseError("expected a positive integer", semi + 1 + i);
    s = s * 10 + (rest[i] - '0');
    if (s > 1'000'000'000) throw ws::ParseError("s too large", semi + 1 + i);
  }
  if (delta.sign() <= 0) throw ws::ParseError("delta must be positive", 0);
  if (s < 1) throw ws::ParseError("s must be positive", semi + 1);
  return {delta, s};
}

std::vector<std::int64_t> parse_s_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string field = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (field.empty()) throw ws::ParseError("empty entry in s list", start);
    std::int64_t s = 0;
    for (std::size_t i = 0; i < field.size(); ++i) {
      if (field[i] < '0' || field[i] > '9') throw ws::ParseError("expected a positive integer", start + i);
      s = s * 10 + (field[i] - '0');
      if (s > 1'000'000'000) throw ws::ParseError("s too large", start + i);
    }
    if (s < 1) throw ws::ParseError("s must be positive", start);
    out.push_back(s);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// "A..B".
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw std::invalid_argument("range must look like A..B");
  const auto lo = std::stoll(text.substr(0, dots));
  const auto hi = std::stoll(text.substr(dots + 2));
  if (lo < 1 || hi < lo) throw std::invalid_argument("range must satisfy 1 <= A <= B");
  return {lo, hi};
}

int print_sweep(const std::string& name, const ws::SweepResult& r) {
  for (const auto& n : r.notes) std::cout << "note: " << n << "\n";
  for (const auto& v : r.violations) std::cout << "violation: " << v << "\n";
  std::cout << name << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.violations.size() << " violations)\n";
  return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified lower bounds for Waldschmidt constants of very general lines in P^3"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string tau_text = "1/1000";
  std::string grid_text = "1/1000";
  std::string precision_text = "1/1000000";
  std::string format_text = "csv";
  std::string cache_text;
  bool no_cache = false;
  app.add_option("--tau", tau_text, "Ordering parameter tau as P/Q")->capture_default_str();
  app.add_option("--grid", grid_text, "Step of the delta scan as P/Q")->capture_default_str();
  app.add_option("--precision", precision_text, "Width of the e_s bracket as P/Q")->capture_default_str();
  app.add_option("--format", format_text, "Output format")->check(CLI::IsMember({"csv", "json", "md"}))->capture_default_str();
  app.add_option("--cache", cache_text, "Cache file (default: $WALDSCHMIDT_CACHE or ~/.cache/waldschmidt/cache.json)");
  app.add_flag("--no-cache", no_cache, "Do not read or write the cache");

  auto* bound = app.add_subcommand("bound", "All bounds for one s");
  std::int64_t bound_s = 0;
  bool no_l = false;
  bound->add_option("s", bound_s, "Number of lines")->required()->check(CLI::PositiveNumber);
  bound->add_flag("--no-l", no_l, "Skip the algorithm-L scan");

  auto* trace_t = app.add_subcommand("trace-t", "Trace of the plane reduction");
  std::string t_input;
  bool t_json = false;
  trace_t->add_option("input", t_input, "delta;q1,...,qs;p  e.g. \"7;1,1,1,1,1;15\"")->required();
  trace_t->add_flag("--json", t_json, "Structured output");

  auto* trace_l = app.add_subcommand("trace-l", "Trace of the quadric degeneration");
  std::string l_input;
  bool l_json = false;
  trace_l->add_option("input", l_input, "delta;s  e.g. \"4;8\"")->required();
  trace_l->add_flag("--json", l_json, "Structured output");

  auto* table = app.add_subcommand("table", "Comparison table for several s");
  std::string s_list_text;
  bool table_no_l = false;
  table->add_option("s_list", s_list_text, "Comma-separated values of s")->required();
  table->add_flag("--no-l", table_no_l, "Skip the algorithm-L scan");

  auto* verify = app.add_subcommand("verify", "Verification sweeps");
  std::string target;
  std::int64_t max_s = 1000;
  std::string range_text = "11..60";
  verify->add_option("target", target, "chudnovsky | thm4 | invariants")
      ->required()
      ->check(CLI::IsMember({"chudnovsky", "thm4", "invariants"}));
  verify->add_option("--max-s", max_s, "Upper end for chudnovsky/invariants")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--range", range_text, "A..B for thm4")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    ws::RunConfig cfg;
    cfg.tau = positive_rational(tau_text, "--tau");
    cfg.grid = positive_rational(grid_text, "--grid");
    cfg.precision = positive_rational(precision_text, "--precision");
    cfg.format = ws::parse_format(format_text);
    cfg.cache_path = cache_text.empty() ? default_cache_path() : std::filesystem::path(cache_text);

    std::unique_ptr<ws::ResultCache> cache;
    auto open_cache = [&]() -> ws::ResultCache* {
      if (no_cache) return nullptr;
      if (!cache) cache = std::make_unique<ws::ResultCache>(cfg.cache_path);
      return cache.get();
    };

    if (*bound) {
      const auto report = ws::cached_report(bound_s, cfg, !no_l, open_cache());
      std::cout << ws::render({report}, cfg.format);
      return 0;
    }
    if (*trace_t) {
      const ws::TInput in = ws::TInput::parse(t_input);
      const ws::TResult r = ws::run_t(in, cfg.tau);
      std::cout << (t_json ? ws::to_json(r).dump(2) + "\n" : ws::format_trace(r));
      return 0;
    }
    if (*trace_l) {
      const auto [delta, s] = parse_l_input(l_input);
      const ws::LResult r = ws::run_l(delta, s, cfg.tau);
      std::cout << (l_json ? ws::to_json(r).dump(2) + "\n" : ws::format_trace(r));
      return 0;
    }
    if (*table) {
      const auto s_list = parse_s_list(s_list_text);
      std::vector<ws::BoundReport> reports;
      reports.reserve(s_list.size());
      for (auto s : s_list) reports.push_back(ws::cached_report(s, cfg, !table_no_l, open_cache()));
      std::cout << ws::render(reports, cfg.format);
      return 0;
    }
    if (*verify) {
      if (target == "chudnovsky") return print_sweep("chudnovsky", ws::verify_chudnovsky(max_s));
      if (target == "invariants") return print_sweep("invariants", ws::verify_invariants(max_s, cfg.precision));
      const auto [lo, hi] = parse_range(range_text);
      return print_sweep("thm4", ws::verify_thm4(lo, hi, cfg.tau));
    }
  } catch (const ws::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
