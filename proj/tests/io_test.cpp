#include "ocg/error.hpp"
#include "ocg/instances.hpp"
#include "ocg/io.hpp"
#include "ocg/ratio.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace ocg;

namespace {

Json two_player() {
  return Json::parse(R"({"n": 2, "min": "1", "max": "5/2",
                         "values": {"a0": "1", "a1": "3/2", "a0,a1": "5/2"}})");
}

}  // namespace

TEST(InstanceJson, ParsesRationalStrings) {
  const InstanceFile f = instance_from_json(two_player());
  EXPECT_EQ(f.game.n(), 2);
  EXPECT_EQ(f.game(Coalition(0b10)), Value(3) / 2);
  EXPECT_EQ(f.game.max(), Value(5) / 2);
}

TEST(InstanceJson, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = paper_instance(PaperCase::BankWorstCase, {});
    const auto g = random_instance(1 + seed % 5, Value(1), Value(7) / 3, seed);
    const Json doc = instance_to_json(g, PlayerNames(g.n()));
    EXPECT_EQ(instance_from_json(Json::parse(doc.dump())).game, g);
    const Json aliased = instance_to_json(inst.game, PlayerNames(4, inst.aliases));
    EXPECT_EQ(instance_from_json(aliased).game, inst.game);
  }
}

TEST(InstanceJson, KeyOrderInsideACoalitionIsIrrelevant) {
  Json doc = two_player();
  doc["values"].erase("a0,a1");
  doc["values"]["a1,a0"] = "5/2";
  EXPECT_EQ(instance_from_json(doc).game, instance_from_json(two_player()).game);
}

TEST(InstanceJson, MissingCoalitionIsInvalidInput) {
  Json doc = two_player();
  doc["values"].erase("a1");
  try {
    instance_from_json(doc);
    FAIL();
  } catch (const GameValidationError&) {
    FAIL() << "missing values are an input error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
    EXPECT_NE(std::string(e.what()).find("a1"), std::string::npos);
  }
}

TEST(InstanceJson, MalformedFields) {
  for (const char* text : {R"([1, 2])", R"({"n": "2"})", R"({"n": 2, "min": 1.5, "max": 3, "values": {}})",
                           R"({"n": 2, "min": "1", "max": "3", "values": {"a0": "x"}})",
                           R"({"n": 2, "min": "1", "max": "3", "values": {"b7": "1"}})"})
    EXPECT_THROW(instance_from_json(Json::parse(text)), Error) << text;
}

TEST(InstanceJson, ValidationIssuesAreReported) {
  Json doc = two_player();
  doc["values"]["a0,a1"] = "1";  // below v(a1)
  doc["values"]["a0"] = "1/2";   // below min
  try {
    instance_from_json(doc);
    FAIL();
  } catch (const GameValidationError& e) {
    bool monotone = false;
    bool bounds = false;
    for (const auto& issue : e.issues()) {
      monotone |= issue.kind == IssueKind::NotMonotone;
      bounds |= issue.kind == IssueKind::OutOfBounds;
    }
    EXPECT_TRUE(monotone);
    EXPECT_TRUE(bounds);
    const Json j = issues_to_json(e.issues(), PlayerNames(2));
    ASSERT_TRUE(j.is_array());
    EXPECT_GE(j.size(), 2u);
  }
}

TEST(InstanceJson, TooManyPlayers) {
  Json doc = two_player();
  doc["n"] = 11;
  try {
    instance_from_json(doc);
    FAIL();
  } catch (const GameValidationError& e) {
    ASSERT_EQ(e.issues().size(), 1u);
    EXPECT_EQ(e.issues()[0].kind, IssueKind::TooManyPlayers);
  }
}

TEST(PlayerNames, AliasesTakePrecedence) {
  const PlayerNames names(3, {"a1", "b", "c"});
  EXPECT_EQ(names.lookup("a1"), 0);
  EXPECT_EQ(names.lookup("a2"), 2);
  EXPECT_EQ(names.lookup("b"), 1);
  EXPECT_THROW(names.lookup("a3"), Error);
  EXPECT_THROW(names.lookup("zz"), Error);
  EXPECT_THROW(PlayerNames(2, {"x", "x"}), Error);
  EXPECT_THROW(PlayerNames(2, {"x"}), Error);
}

TEST(PlayerNames, OrdersAndCoalitions) {
  const PlayerNames names(3, {"x", "y", "z"});
  EXPECT_EQ(names.parse_order("x, z,y"), ArrivalOrder({0, 2, 1}));
  EXPECT_EQ(names.parse_coalition("z,x"), Coalition(0b101));
  EXPECT_THROW(names.parse_coalition("x,x"), Error);
  EXPECT_THROW(names.parse_order("x,x,y"), Error);
  EXPECT_EQ(names.coalition(Coalition(0b110)), Json::parse(R"(["y","z"])"));
}

TEST(Reports, RatioJsonCarriesExactAndDecimal) {
  const auto inst = paper_instance(PaperCase::ThreeMinUpperBound, {Value(1), Value(5)});
  RatioOptions o;
  o.jobs = 1;
  const RatioReport r = competitive_ratio(inst.game, PolicySpec::amc(), PlayerModel::Greedy, o);
  const Json j = ratio_to_json(r, PlayerNames(3, inst.aliases));
  EXPECT_EQ(j.at("ratio"), "3/5");
  EXPECT_DOUBLE_EQ(j.at("ratio_decimal").get<double>(), 0.6);
}

TEST(Reports, FamilyCsvHeader) {
  FamilySpec list;
  list.kind = FamilySpec::Kind::List;
  list.games = {random_instance(3, Value(1), Value(2), 1)};
  list.bound = [](const CharacteristicFunction&) { return Value(1) / 2; };
  RatioOptions o;
  o.jobs = 1;
  const std::string csv = family_csv(family_ratio(PolicySpec::amc(), PlayerModel::Greedy, list, o));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "instance_hash,n,delta,ratio,bound,margin");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}
