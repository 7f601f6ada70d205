#include <waldschmidt/report.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace ws = waldschmidt;
using ws::Rational;

namespace {

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::string trim(std::string x) {
  while (!x.empty() && x.front() == ' ') x.erase(x.begin());
  while (!x.empty() && x.back() == ' ') x.pop_back();
  return x;
}

class TempCache : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("waldschmidt_report_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(dir_);
    path_ = dir_ / "cache.json";
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path dir_;
  std::filesystem::path path_;
};

}  // namespace

TEST(Report, SingleLine) {
  const auto r = ws::make_report(1, {}, true);
  EXPECT_EQ(r.thm1_q, 1);
  EXPECT_EQ(r.thm2_q, 1);
  EXPECT_EQ(r.thm3_q, 1);
  EXPECT_EQ(r.chud_bound, Rational(1));
  ASSERT_TRUE(r.l_bound);
  EXPECT_EQ(*r.l_bound, Rational(1));
  EXPECT_TRUE(r.e_s.exact);
  EXPECT_EQ(ws::render_csv({r}), std::string(ws::kCsvHeader) + "\n1,1,1,1,1,1.000,1.000000\n");
}

TEST(Report, TenLinesWithoutDegeneration) {
  const auto r = ws::make_report(10, {}, false);
  EXPECT_EQ(r.chud_display(), "3.5");
  EXPECT_EQ(r.thm2_q, 4);
  EXPECT_EQ(r.thm1_q, 4);
  EXPECT_EQ(r.thm3_q, 4);
  EXPECT_FALSE(r.l_bound);
  EXPECT_EQ(r.e_display(), "5.107250");
  EXPECT_EQ(r.flags, std::vector<std::string>{"thm4_exception"});
}

TEST(Report, ReferenceMismatchIsFlagged) {
  const auto r = ws::make_report(20, {}, false);
  EXPECT_EQ(r.chud_bound, Rational(5));
  ASSERT_EQ(r.flags.size(), 1u);
  EXPECT_EQ(r.flags[0], "chud_reference_mismatch(reference=6)");
  EXPECT_TRUE(ws::report_flags(500).empty());
}

TEST(Report, RejectsBadInput) {
  EXPECT_THROW(ws::make_report(0, {}, false), std::invalid_argument);
  ws::RunConfig cfg;
  cfg.tau = Rational(0);
  EXPECT_THROW(ws::make_report(3, cfg, false), std::invalid_argument);
  EXPECT_THROW(ws::parse_format("xml"), std::invalid_argument);
}

TEST(Report, FormatsCarryTheSameNumbers) {
  std::vector<ws::BoundReport> reports;
  for (std::int64_t s : {1, 4, 10, 20, 100}) reports.push_back(ws::make_report(s, {}, s <= 10));

  // CSV rows
  const auto csv_lines = split_on(ws::render_csv(reports), '\n');
  ASSERT_EQ(csv_lines.size(), reports.size() + 1);
  // JSON array
  const auto json = nlohmann::ordered_json::parse(ws::render_json(reports));
  ASSERT_EQ(json.size(), reports.size());
  // Markdown columns
  const auto md_lines = split_on(ws::render_md(reports), '\n');

  auto md_cell = [&](std::size_t row, std::size_t col) {
    const auto cells = split_on(md_lines[row], '|');
    return trim(cells.at(col + 2));
  };

  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    const auto cells = split_on(csv_lines[i + 1], ',');
    ASSERT_GE(cells.size(), 6u);
    EXPECT_EQ(cells[0], std::to_string(r.s));
    EXPECT_EQ(cells[1], r.chud_display());
    EXPECT_EQ(cells[2], std::to_string(r.thm2_q));
    EXPECT_EQ(cells[3], std::to_string(r.thm1_q));
    EXPECT_EQ(cells[4], std::to_string(r.thm3_q));
    EXPECT_EQ(cells[5], r.l_display());
    EXPECT_EQ(csv_lines[i + 1].substr(csv_lines[i + 1].rfind(',') + 1), r.e_display());

    const auto& j = json[i];
    EXPECT_EQ(j.at("s").get<std::int64_t>(), r.s);
    EXPECT_EQ(Rational::parse(j.at("thm_chud").at("exact").get<std::string>()), r.chud_bound);
    EXPECT_EQ(j.at("thm_chud").at("decimal").get<std::string>(), r.chud_display());
    EXPECT_EQ(j.at("thm_approach1").get<std::int64_t>(), r.thm2_q);
    EXPECT_EQ(j.at("thm_approach1alg").get<std::int64_t>(), r.thm1_q);
    EXPECT_EQ(j.at("thm_approach2alg").get<std::int64_t>(), r.thm3_q);
    if (r.l_bound) {
      EXPECT_EQ(Rational::parse(j.at("algorithm_L").at("exact").get<std::string>()), *r.l_bound);
    } else {
      EXPECT_TRUE(j.at("algorithm_L").is_null());
    }
    EXPECT_EQ(j.at("e_s").at("decimal").get<std::string>(), r.e_display());
    EXPECT_EQ(ws::report_from_json(j), r);

    EXPECT_EQ(md_cell(0, i), std::to_string(r.s));
    EXPECT_EQ(md_cell(2, i), r.chud_display());
    EXPECT_EQ(md_cell(3, i), std::to_string(r.thm2_q));
    EXPECT_EQ(md_cell(4, i), std::to_string(r.thm1_q));
    EXPECT_EQ(md_cell(5, i), std::to_string(r.thm3_q));
    EXPECT_EQ(md_cell(6, i), r.l_display());
    EXPECT_EQ(md_cell(7, i), r.e_display());
  }
}

TEST_F(TempCache, RoundTripIsByteIdentical) {
  ws::RunConfig cfg;
  std::vector<ws::BoundReport> fresh;
  {
    ws::ResultCache cache(path_);
    for (std::int64_t s : {3, 10, 20}) fresh.push_back(ws::cached_report(s, cfg, s < 20, &cache));
    EXPECT_EQ(cache.size(), 3u);
  }
  ASSERT_TRUE(std::filesystem::exists(path_));
  EXPECT_FALSE(std::filesystem::exists(path_.string() + ".tmp"));

  ws::ResultCache reopened(path_);
  std::vector<ws::BoundReport> cached;
  for (std::int64_t s : {3, 10, 20}) {
    auto hit = reopened.find(ws::CacheKey::of(s, cfg, s < 20));
    ASSERT_TRUE(hit) << s;
    cached.push_back(*hit);
  }
  EXPECT_EQ(cached, fresh);
  for (auto fmt : {ws::OutputFormat::csv, ws::OutputFormat::json, ws::OutputFormat::md}) {
    EXPECT_EQ(ws::render(cached, fmt), ws::render(fresh, fmt));
  }
}

TEST_F(TempCache, KeyMismatchMisses) {
  ws::RunConfig cfg;
  ws::ResultCache cache(path_);
  cache.store(ws::CacheKey::of(5, cfg, false), ws::make_report(5, cfg, false));
  EXPECT_TRUE(cache.find(ws::CacheKey::of(5, cfg, false)));
  EXPECT_FALSE(cache.find(ws::CacheKey::of(6, cfg, false)));
  EXPECT_FALSE(cache.find(ws::CacheKey::of(5, cfg, true)));
  ws::RunConfig other = cfg;
  other.tau = Rational(1, 100);
  EXPECT_FALSE(cache.find(ws::CacheKey::of(5, other, false)));
  other = cfg;
  other.grid = Rational(1, 100);
  EXPECT_FALSE(cache.find(ws::CacheKey::of(5, other, false)));
  auto stale = ws::CacheKey::of(5, cfg, false);
  stale.version = "0.0.0";
  EXPECT_FALSE(cache.find(stale));
}

TEST_F(TempCache, StoreReplacesEntry) {
  ws::RunConfig cfg;
  ws::ResultCache cache(path_);
  const auto key = ws::CacheKey::of(7, cfg, false);
  auto r = ws::make_report(7, cfg, false);
  cache.store(key, r);
  r.flags.push_back("edited");
  cache.store(key, r);
  EXPECT_EQ(cache.size(), 1u);
  EXPECT_EQ(ws::ResultCache(path_).find(key)->flags.back(), "edited");
}

TEST_F(TempCache, OtherVersionsAndGarbageAreIgnored) {
  std::filesystem::create_directories(dir_);
  {
    std::ofstream out(path_);
    out << R"({"version": "0.0.1", "entries": [{"key": {}, "value": {}, "timestamp": ""}]})";
  }
  EXPECT_EQ(ws::ResultCache(path_).size(), 0u);
  {
    std::ofstream out(path_);
    out << "{ not json";
  }
  ws::ResultCache cache(path_);
  EXPECT_EQ(cache.size(), 0u);
  ws::RunConfig cfg;
  cache.store(ws::CacheKey::of(2, cfg, false), ws::make_report(2, cfg, false));
  const auto doc = nlohmann::ordered_json::parse(std::ifstream(path_));
  EXPECT_EQ(doc.at("version"), ws::kVersion);
  EXPECT_EQ(doc.at("entries").size(), 1u);
}
