#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "coulomb/cli/run.hpp"
#include "support.hpp"

namespace coulomb::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

RunConfig parse_ok(const json& j) {
  auto r = parse_config(j);
  EXPECT_TRUE(r.ok()) << (r.errors.empty() ? "" : r.errors.front());
  return *r.config;
}

bool mentions(const std::vector<std::string>& errors, const std::string& what) {
  for (const auto& e : errors)
    if (e.find(what) != std::string::npos) return true;
  return false;
}

TEST(ParseConfig, PresetIsValid) {
  const auto c = parse_ok({{"geometry", "p2_O-2_O-1"}, {"rank", 1}, {"mode", "limit"}, {"max_m2", 9}});
  EXPECT_EQ(c.rank, 1u);
  EXPECT_EQ(c.mode, Mode::Limit);
  EXPECT_EQ(c.max_m2, 9);
  EXPECT_EQ(c.format, Format::Json);
  EXPECT_EQ(c.surface->name(), "p2_O-2_O-1");
}

TEST(ParseConfig, CollectsEveryError) {
  const auto r = parse_config(json{{"geometry", "p3"},
                                   {"rank", 0},
                                   {"mode", "numeric"},
                                   {"max_m2", -2},
                                   {"max_boxes", -1},
                                   {"strategy", "nearest"},
                                   {"format", "xml"},
                                   {"colour", 1}});
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.errors.size(), 8u);
  EXPECT_TRUE(mentions(r.errors, "unknown preset"));
  EXPECT_TRUE(mentions(r.errors, "rank"));
  EXPECT_TRUE(mentions(r.errors, "mode"));
  EXPECT_TRUE(mentions(r.errors, "max_m2"));
  EXPECT_TRUE(mentions(r.errors, "max_boxes"));
  EXPECT_TRUE(mentions(r.errors, "strategy"));
  EXPECT_TRUE(mentions(r.errors, "format"));
  EXPECT_TRUE(mentions(r.errors, "colour"));
}

TEST(ParseConfig, RankZeroIsAnError) {
  const auto r = parse_config(json{{"geometry", "p2_O-2_O-1"}, {"rank", 0}, {"max_m2", 3}});
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(mentions(r.errors, "rank"));
}

TEST(ParseConfig, InlineGeometry) {
  json g = {{"name", "plane"},
            {"charges", {{1, 1, 1}}},
            {"fiber", {{-2, -1}}},
            {"cones", {{1, 2}, {0, 2}, {0, 1}}},
            {"intersection", {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}},
            {"kahler", {1}},
            {"twist", 0}};
  const auto c = parse_ok({{"geometry", g}, {"rank", 1}, {"max_m2", 3}});
  EXPECT_EQ(c.geometry, "plane");
  EXPECT_EQ(c.surface->canonical_form(), testing::surface()->canonical_form());
  EXPECT_EQ(c.surface->hash(), testing::surface()->hash());

  g["charges"] = {{1, 1, 0}};
  g["fiber"] = {{-1, -1}};
  const auto r = parse_config(json{{"geometry", g}, {"rank", 1}, {"max_m2", 3}});
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(mentions(r.errors, "fixed points not isolated"));

  const auto missing = parse_config(json{{"geometry", json{{"charges", {{1, 1, 1}}}}}, {"rank", 1}, {"max_m2", 3}});
  EXPECT_TRUE(mentions(missing.errors, "geometry.fiber"));
  EXPECT_TRUE(mentions(missing.errors, "geometry.cones"));
}

TEST(ParseConfig, TextEntryPoint) {
  EXPECT_TRUE(parse_config(std::string_view(R"({"geometry":"p2_O-2_O-1","rank":2,"max_m2":8})")).ok());
  const auto bad = parse_config(std::string_view("{rank: 2"));
  EXPECT_FALSE(bad.ok());
  EXPECT_TRUE(mentions(bad.errors, "malformed"));
}

TEST(ParseConfig, HashIgnoresOperationalFields) {
  json base = {{"geometry", "p2_O-2_O-1"}, {"rank", 1}, {"max_m2", 5}};
  const auto a = parse_ok(base);
  json other = base;
  other["threads"] = 8;
  other["format"] = "csv";
  other["cache_dir"] = "/tmp/x";
  EXPECT_EQ(parse_ok(other).hash(), a.hash());
  other["seed"] = 2;
  EXPECT_NE(parse_ok(other).hash(), a.hash());
  EXPECT_EQ(a.hash().size(), 40u);
}

json payload(const json& out) {
  json records = out.at("records");
  return records;
}

TEST(Run, ReproducesLowestRankOneSlot) {
  const auto c = parse_ok({{"geometry", "p2_O-2_O-1"}, {"rank", 1}, {"max_m2", 3}, {"max_boxes", 0}});
  const auto r = run(c);
  ASSERT_TRUE(r.error.empty()) << r.error;
  const auto j = to_json(c, r);
  EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
  const auto& rec = j.at("records").at(0);
  EXPECT_EQ(rec.at("m2"), json::array({3}));
  EXPECT_EQ(rec.at("n"), 1);
  EXPECT_EQ(rec.at("coefficient"), json::parse("[[-1,1],[1,-1]]"));
  EXPECT_EQ(j.at("provenance").at("config_hash"), c.hash());
}

TEST(Run, RecordsAreSortedByMThenDescendingN) {
  const auto c = parse_ok({{"geometry", "p2_O-2_O-1"}, {"rank", 1}, {"max_m2", 7}, {"max_boxes", 2}});
  const auto j = to_json(c, run(c));
  std::int64_t last_m = -1, last_n = 0;
  for (const auto& rec : j.at("records")) {
    const auto m = rec.at("m2").at(0).get<std::int64_t>();
    const auto n = rec.at("n").get<std::int64_t>();
    if (m == last_m) EXPECT_LT(n, last_n);
    EXPECT_GE(m, last_m);
    last_m = m;
    last_n = n;
  }
}

TEST(Run, DeterministicAcrossThreadsAndWarmCache) {
  const auto dir = fs::temp_directory_path() / ("coulomb-cli-test-" + std::to_string(std::random_device{}()));
  json base = {{"geometry", "p2_O-2_O-1"}, {"rank", 2}, {"max_m2", 10}, {"max_boxes", 2}};
  const auto one = parse_ok(base);
  const auto first = render(one, run(one));
  base["threads"] = 4;
  base["cache_dir"] = dir.string();
  const auto cached = parse_ok(base);
  const auto cold = run(cached);
  const auto warm = run(cached);
  EXPECT_GT(warm.table.cache_hits, 0u);
  EXPECT_EQ(render(cached, cold), first);
  EXPECT_EQ(render(cached, warm), first);
  std::error_code ec;
  fs::remove_all(dir, ec);
}

TEST(Run, SeedsChangeProvenanceOnly) {
  json base = {{"geometry", "p2_O-2_O-1"}, {"rank", 1}, {"max_m2", 7}, {"max_boxes", 4}};
  const auto a = parse_ok(base);
  base["seed"] = 77;
  const auto b = parse_ok(base);
  const auto ja = to_json(a, run(a)), jb = to_json(b, run(b));
  EXPECT_EQ(payload(ja), payload(jb));
  EXPECT_NE(ja.at("provenance"), jb.at("provenance"));
}

TEST(Run, CsvFlattensTheMassPolynomial) {
  auto c = parse_ok({{"geometry", "p2_O-2_O-1"}, {"rank", 1}, {"max_m2", 5}, {"max_boxes", 1}, {"format", "csv"}});
  const auto text = render(c, run(c));
  EXPECT_EQ(text.rfind("m2,n,value\n", 0), 0u);
  EXPECT_NE(text.find("3,1,\"-M^(1/2) + M^(-1/2)\"\n"), std::string::npos);
  EXPECT_NE(text.find("5,3,\"-M^(3/2) + M^(-3/2)\"\n"), std::string::npos);
}

TEST(Run, EquivariantOutput) {
  const auto c = parse_ok({{"geometry", "p2_O-2_O-1"}, {"rank", 1}, {"mode", "equivariant"}, {"max_m2", 3}});
  const auto r = run(c);
  ASSERT_TRUE(r.error.empty());
  const auto j = to_json(c, r);
  EXPECT_TRUE(j.at("provenance").at("direction").is_null());
  EXPECT_FALSE(j.at("records").at(0).at("terms").empty());
}

TEST(Run, EngineErrorsCarryCoordinates) {
  const auto r = run(parse_ok({{"geometry", "p2_O-2_O-1"},
                               {"rank", 1},
                               {"max_m2", 3},
                               {"max_boxes", 0},
                               {"strategy", "covector"},
                               {"covector", {0}}}));
  EXPECT_FALSE(r.regular);
  EXPECT_EQ(r.error, "non-generic collision: covector lies on a cone wall [m2=[3] xi=(0)]");
}

}  // namespace
}  // namespace coulomb::cli
