#include <gtest/gtest.h>

#include <algorithm>

#include "qsym/error.hpp"
#include "qsym/report.hpp"

using namespace qsym;

TEST(Report, JsonRoundTrip) {
  Report r;
  r.command = "verify-paper --only steiner";
  r.input_digest = sha256_hex("catalog");
  r.checks.push_back({"steiner.determinant", "determinant identity", "pass", "exact", "Q"});
  r.checks.push_back({"x.y", "quote with \"quotes\" and unicode é", "fail", "diff: a != b", "GF(101)"});
  r.timings["steiner"] = 0.125;
  r.timings["total"] = 1.5;
  nlohmann::json j = to_json(r);
  EXPECT_EQ(j["version"], 1);
  EXPECT_TRUE(j["checks"].is_array());
  EXPECT_EQ(report_from_json(j), r);
  EXPECT_EQ(report_from_json(nlohmann::json::parse(j.dump())), r);
  EXPECT_FALSE(r.all_passed());
}

TEST(Report, Sha256KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Report, UnknownGroupRejected) { EXPECT_THROW(verify_paper(std::string("no-such-group")), DomainError); }

TEST(Report, GroupsCoverTheCatalog) {
  auto groups = verification_groups();
  for (const auto& id : catalog_ids()) EXPECT_NE(std::find(groups.begin(), groups.end(), id), groups.end()) << id;
  for (const auto& g : {"families", "dimensions", "census", "numerology", "representations", "ramification"})
    EXPECT_NE(std::find(groups.begin(), groups.end(), g), groups.end()) << g;
}

TEST(Report, SteinerGroupPasses) {
  Report r = verify_paper(std::string("steiner"));
  EXPECT_TRUE(r.all_passed()) << to_text(r);
  bool det = false;
  for (const auto& c : r.checks) det = det || c.tag == "steiner.determinant";
  EXPECT_TRUE(det);
  EXPECT_EQ(r.input_digest.size(), 64u);
  EXPECT_EQ(report_from_json(to_json(r)), r);
  EXPECT_NE(to_text(r).find("steiner.determinant"), std::string::npos);
}

TEST(Report, EveryCatalogEntryMeetsItsExpectation) {
  for (const auto& id : catalog_ids()) {
    auto checks = check_catalog_entry(paper_catalog(id));
    EXPECT_FALSE(checks.empty()) << id;
    for (const auto& c : checks) {
      EXPECT_TRUE(c.passed()) << c.tag << ": " << c.details;
      EXPECT_FALSE(c.field.empty()) << c.tag;
    }
  }
}

TEST(Report, DimensionsGroup) {
  Report r = verify_paper(std::string("dimensions"));
  EXPECT_TRUE(r.all_passed()) << to_text(r);
  EXPECT_GE(r.checks.size(), 4u);
}
