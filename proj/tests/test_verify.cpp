#include <filesystem>

#include "doctest.h"
#include "khr/report.hpp"

using namespace khr;

TEST_CASE("max degree precedence") {
  CHECK(resolve_max_degree(std::nullopt, nullptr) == 12);
  CHECK(resolve_max_degree(std::nullopt, "") == 12);
  CHECK(resolve_max_degree(std::nullopt, "7") == 7);
  CHECK(resolve_max_degree(5, "7") == 5);
  CHECK(resolve_max_degree(0, nullptr) == 0);
  CHECK_THROWS_AS(resolve_max_degree(std::nullopt, "7x"), std::invalid_argument);
  CHECK_THROWS_AS(resolve_max_degree(std::nullopt, "abc"), std::invalid_argument);
  CHECK_THROWS_AS(resolve_max_degree(-1, nullptr), std::invalid_argument);
}

TEST_CASE("braid JSON input") {
  const auto b = braid_from_json(Json::parse(R"({"n": 3, "word": [1, -2, 1]})"));
  CHECK(b == BraidWord(3, {1, -2, 1}));
  CHECK(braid_from_json(braid_to_json(b)) == b);
  CHECK_THROWS(braid_from_json(Json::parse(R"({"word": [1]})")));
  CHECK_THROWS(braid_from_json(Json::parse(R"({"n": 2, "word": [2]})")));
}

TEST_CASE("JSON round trips") {
  const BraidWord trefoil(2, {1, 1, 1});
  const auto h = make_homfly_report(trefoil);
  CHECK(homfly_report_from_json(Json::parse(to_json(h).dump())) == h);
  CHECK(h.normalized.at(4) == "-1");

  const auto r = make_rouquier_report(minimized_rouquier(BraidWord(3, {1, 2, 1})));
  const Json rj = to_json(r);
  CHECK(rouquier_report_from_json(Json::parse(rj.dump(2))) == r);
  REQUIRE(rj.size() == 4);
  CHECK(rj[0]["degree"] == 0);
  CHECK(rj[0]["objects"][0]["label"] == "B121");
  CHECK(rj[3]["objects"][0]["shift"] == 3);

  const auto t = make_hhh_report(trefoil, hhh(trefoil, 6));
  CHECK(t.euler_match);
  const Json tj = to_json(t);
  CHECK(tj["truncation"] == 6);
  CHECK(tj["euler_check"]["order"] == 6);
  CHECK(hhh_report_from_json(Json::parse(tj.dump())) == t);
  CHECK(table_from_csv(to_csv(t.table), 2, 6) == t.table);
  CHECK(to_csv(t.table).rfind("k,i,j,dim\n", 0) == 0);

  VerifyReport v;
  v.suites.push_back({"a1", SuiteStatus::passed, 0.125, {{"x", true, ""}, {"y", true, "detail, with \"quotes\""}}});
  v.suites.push_back({"a2", SuiteStatus::timeout, 3.5, {{"finished", false, "time budget exceeded"}}});
  v.suites.push_back({"markov", SuiteStatus::skipped, 0, {}});
  CHECK(verify_report_from_json(Json::parse(to_json(v).dump())) == v);
  CHECK_FALSE(v.ok());
  CHECK(to_json(v)["ok"] == false);
}

TEST_CASE("complex cache") {
  const auto dir = std::filesystem::temp_directory_path() / "khr_cache_test";
  std::filesystem::remove_all(dir);
  const ComplexCache cache(dir);
  const BraidWord b(3, {1, -2, 1});
  CHECK_FALSE(cache.load(b).has_value());
  const auto c = cache.minimized(b);
  REQUIRE(std::filesystem::exists(cache.path_for(b)));
  const auto loaded = cache.load(b);
  REQUIRE(loaded.has_value());
  CHECK(term_signature(*loaded) == term_signature(c));
  CHECK(loaded->d_squared_zero());
  for (int i = c.min_degree(); i < c.max_degree(); ++i) CHECK(loaded->assembled(i) == c.assembled(i));
  // Keys distinguish strand count and letter signs.
  CHECK(cache.path_for(BraidWord(3, {1})) != cache.path_for(BraidWord(4, {1})));
  CHECK(cache.path_for(BraidWord(3, {1})) != cache.path_for(BraidWord(3, {-1})));
  CHECK(cache.path_for(b).filename().string().find("_c" + std::to_string(kConventionVersion)) != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("verify plumbing") {
  VerifyConfig config;
  config.suites = {"all"};
  config.skip = {"euler", "markov", "a1"};
  const auto r = verify_all(config);
  REQUIRE(r.suites.size() == 6);
  CHECK(r.suites[0].status == SuiteStatus::passed);
  CHECK(r.suites[1].status == SuiteStatus::passed);
  CHECK(r.suites[2].status == SuiteStatus::skipped);
  CHECK(r.suites[5].suite == "a2");
  CHECK(r.suites[5].status == SuiteStatus::skipped);
  CHECK(r.ok());

  VerifyConfig a2;
  a2.suites = {"a2"};
  a2.a2_budget_seconds = 0;
  const auto timed_out = verify_all(a2);
  REQUIRE(timed_out.suites.size() == 1);
  CHECK(timed_out.suites[0].status == SuiteStatus::timeout);
  CHECK_FALSE(timed_out.ok());

  VerifyConfig bad;
  bad.suites = {"nope"};
  CHECK_THROWS_AS(verify_all(bad), std::invalid_argument);
}

TEST_CASE("injected normalization fails the Euler suite") {
  CHECK(verify_euler(6).status == SuiteStatus::passed);
  const auto shifted = verify_euler(6, {1, 2});
  CHECK(shifted.status == SuiteStatus::failed);
  const auto negated = verify_euler(6, {-1, 0});
  CHECK(negated.status == SuiteStatus::failed);
}

TEST_CASE("A_1 and A_2 suites") {
  const auto a1 = verify_appendix_a1();
  CHECK(a1.status == SuiteStatus::passed);
  CHECK(a1.checks.size() >= 8);
  const auto a2 = verify_appendix_a2();
  CHECK(a2.status == SuiteStatus::passed);
  for (const auto& c : a2.checks) {
    CAPTURE(c.name);
    CHECK(c.passed);
  }
}
