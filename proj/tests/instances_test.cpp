#include "ocg/error.hpp"
#include "ocg/instances.hpp"
#include "oracle/naive.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace ocg;

namespace {

std::uint32_t m(std::initializer_list<int> one_based) {
  std::uint32_t out = 0;
  for (int p : one_based) out |= 1u << (p - 1);
  return out;
}

const Value& at(const CharacteristicFunction& g, std::initializer_list<int> one_based) { return g(Coalition(m(one_based))); }

void expect_bad(PaperCase id, const InstanceParams& p) {
  try {
    paper_instance(id, p);
    FAIL() << "expected BadParams for " << to_string(id);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadParams);
  }
}

}  // namespace

TEST(PaperInstances, WireNamesRoundTrip) {
  for (auto id : {PaperCase::ThreeMinUpperBound, PaperCase::AmcChain, PaperCase::AmcHTight,
                  PaperCase::AmcHStabilityWitness, PaperCase::IrUpperBound, PaperCase::NonAnticipativeFamily,
                  PaperCase::BankWorstCase})
    EXPECT_EQ(parse_paper_case(to_string(id)), id);
  EXPECT_THROW(parse_paper_case("thm-unknown"), Error);
}

TEST(PaperInstances, ThreePlayerTable) {
  const auto inst = paper_instance(PaperCase::ThreeMinUpperBound, {Value(1), Value(5)});
  const auto& g = inst.game;
  EXPECT_EQ(inst.aliases, (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_EQ(at(g, {1, 2}), Value(1));
  EXPECT_EQ(at(g, {1, 3}), Value(2));
  EXPECT_EQ(at(g, {2, 3}), Value(2));
  EXPECT_EQ(at(g, {1, 2, 3}), Value(5));
  EXPECT_EQ(g.delta(), 5);
  EXPECT_EQ(naive::best_partition({g.table().begin(), g.table().end()}), Value(5));
}

TEST(PaperInstances, ChainRunsAndPairs) {
  InstanceParams p;
  p.max = Value(5) / 2;
  const auto g = paper_instance(PaperCase::AmcChain, p).game;
  EXPECT_EQ(g.n(), 4);
  EXPECT_EQ(g.delta(), 2);
  EXPECT_EQ(at(g, {1, 2}), Value(201) / 100);
  EXPECT_EQ(at(g, {2, 3}), Value(201) / 100);
  EXPECT_EQ(at(g, {1, 3}), Value(5) / 2);
  EXPECT_EQ(at(g, {2, 4}), Value(5) / 2);
  EXPECT_EQ(at(g, {1, 4}), Value(1));
  EXPECT_EQ(naive::best_partition({g.table().begin(), g.table().end()}), Value(5));
}

TEST(PaperInstances, TightTable) {
  InstanceParams p;
  p.eps = Value(1) / 10;
  const auto g = paper_instance(PaperCase::AmcHTight, p).game;
  EXPECT_EQ(at(g, {1, 2}), Value(41) / 10);
  EXPECT_EQ(at(g, {3, 4}), Value(2));
  EXPECT_EQ(at(g, {1, 4}), Value(2));
  EXPECT_EQ(at(g, {2, 3}), Value(2));
  EXPECT_EQ(at(g, {1, 3}), Value(6));
  EXPECT_EQ(at(g, {1, 2, 3}), Value(6));
  EXPECT_EQ(naive::best_partition({g.table().begin(), g.table().end()}), Value(12));
}

TEST(PaperInstances, WitnessScalesWithH) {
  for (Value h : {Value(1) / 2, Value(1), Value(3)}) {
    InstanceParams p;
    p.h = h;
    const auto g = paper_instance(PaperCase::AmcHStabilityWitness, p).game;
    EXPECT_EQ(g.max(), 3 + 3 * h);
    EXPECT_EQ(at(g, {1, 3}), 2 + 2 * h);
    EXPECT_EQ(at(g, {2, 3, 4}), 3 + 3 * h);
  }
}

TEST(PaperInstances, NonAnticipativeBranches) {
  InstanceParams p;
  p.k = 3;
  const auto a = paper_instance(PaperCase::NonAnticipativeFamily, p).game;
  p.branch = 'b';
  const auto b = paper_instance(PaperCase::NonAnticipativeFamily, p).game;
  EXPECT_EQ(a.n(), 4);
  EXPECT_EQ(b.n(), 6);
  // both branches agree on the shared prefix a1..ak
  for (std::uint32_t s = 1; s < 8; ++s) EXPECT_EQ(a(Coalition(s)), b(Coalition(s)));
  EXPECT_EQ(at(b, {5, 6}), Value(2));
  EXPECT_EQ(at(b, {3, 6}), Value(10));
}

TEST(PaperInstances, BankWorstCaseValues) {
  InstanceParams p;
  p.max = 10;
  p.k = 2;
  const auto g = paper_instance(PaperCase::BankWorstCase, p).game;
  EXPECT_EQ(g.n(), 4);
  EXPECT_EQ(at(g, {1, 2}), Value(1));
  EXPECT_EQ(at(g, {1, 3}), Value(10));
  EXPECT_EQ(at(g, {2, 4}), Value(10));
  EXPECT_EQ(at(g, {1, 2, 3}), Value(10));
  EXPECT_EQ(naive::best_partition({g.table().begin(), g.table().end()}), Value(20));
}

TEST(PaperInstances, RejectsBadParameters) {
  expect_bad(PaperCase::ThreeMinUpperBound, {Value(1), Value(2)});
  InstanceParams chain;
  chain.max = Value(7) / 2;  // delta 3, not 2
  expect_bad(PaperCase::AmcChain, chain);
  chain.max = Value(5) / 2;
  chain.eps = Value(1);  // 2 min + eps exceeds max
  expect_bad(PaperCase::AmcChain, chain);
  InstanceParams tight;
  tight.max = 4;
  expect_bad(PaperCase::AmcHTight, tight);
  InstanceParams witness;
  witness.h = 0;
  expect_bad(PaperCase::AmcHStabilityWitness, witness);
  InstanceParams fam;
  fam.branch = 'c';
  expect_bad(PaperCase::NonAnticipativeFamily, fam);
  InstanceParams bank;
  bank.mu = Value(1) / 20;
  expect_bad(PaperCase::BankWorstCase, bank);
  bank.mu = 1;
  bank.k = 6;
  expect_bad(PaperCase::BankWorstCase, bank);
}

TEST(Closure, RejectsOverriddenPins) {
  EXPECT_THROW(complete_by_closure(2, {{0b01, Value(3)}, {0b11, Value(2)}}, Value(1), Value(5)), Error);
  const auto g = complete_by_closure(2, {{0b01, Value(3)}}, Value(1), Value(5));
  EXPECT_EQ(g(Coalition(0b10)), Value(1));
  EXPECT_EQ(g(Coalition(0b11)), Value(3));
}

TEST(RandomInstance, DeterministicPerSeed) {
  EXPECT_EQ(random_instance(5, Value(1), Value(3), 42), random_instance(5, Value(1), Value(3), 42));
  EXPECT_NE(random_instance(5, Value(1), Value(3), 42), random_instance(5, Value(1), Value(3), 43));
}

TEST(RandomInstance, ValidAndInRange) {
  std::set<int> classes;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto g = random_instance(2 + seed % 5, Value(1), Value(3), seed);
    const std::vector<Value> t(g.table().begin(), g.table().end());
    EXPECT_TRUE(validate_game(g.n(), t, g.min(), g.max()).ok());
    classes.insert(g.delta());
  }
  EXPECT_EQ(classes, (std::set<int>{3}));
}

TEST(RandomInstance, TwoPointGrid) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = random_instance(4, Value(1), Value(3), seed, Value(2));
    for (std::uint32_t s = 1; s < 16; ++s) EXPECT_TRUE(g(Coalition(s)) == 1 || g(Coalition(s)) == 3);
  }
}

TEST(GridFamily, CanonicalRepresentativesAreMinimal) {
  const GridFamily grid = grid_family(3, Value(1), Value(3), Value(1), true);
  const GridFamily full = grid_family(3, Value(1), Value(3), Value(1), false);
  EXPECT_EQ(full.tables.size(), naive::count_monotone(3, 3));
  // every full table relabels to exactly one canonical table
  std::set<std::vector<std::uint8_t>> reps(grid.tables.begin(), grid.tables.end());
  EXPECT_EQ(reps.size(), grid.tables.size());
  for (const auto& t : full.tables) {
    std::vector<int> perm{0, 1, 2};
    std::vector<std::uint8_t> best = t;
    do {
      std::vector<std::uint8_t> w(8, 0);
      for (std::uint32_t s = 1; s < 8; ++s) {
        std::uint32_t img = 0;
        for (int p = 0; p < 3; ++p)
          if ((s >> p) & 1u) img |= 1u << perm[p];
        w[img] = t[s];
      }
      best = std::min(best, w);
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_TRUE(reps.count(best));
  }
}
