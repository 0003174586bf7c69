#include "ocg/axioms.hpp"
#include "ocg/instances.hpp"
#include "ocg/suites.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace ocg;

namespace {

PaperInstance ir_bound() { return paper_instance(PaperCase::IrUpperBound, {Value(1), Value(5)}); }

ArrivalOrder shuffled(int n, std::mt19937_64& rng) {
  std::vector<PlayerId> seq(n);
  std::iota(seq.begin(), seq.end(), 0);
  std::shuffle(seq.begin(), seq.end(), rng);
  return ArrivalOrder(seq);
}

}  // namespace

TEST(NonWasteful, HoldsOnIrrevocableTracesOfRandomGames) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_instance(2 + i % 5, Value(1), Value(5), rng());
    for (auto spec : {PolicySpec::amc(), PolicySpec::amc_h(Value(1)), PolicySpec::oracle_pair()}) {
      const auto t = simulate(g, shuffled(g.n(), rng), spec, PlayerModel::Greedy, TieBreak::NewFirst);
      EXPECT_TRUE(check_non_wasteful(t, g).holds);
    }
  }
}

TEST(NonWasteful, BankPessimisticStepSumsMatchCoalitionValues) {
  InstanceParams params;
  params.max = 10;
  const auto inst = paper_instance(PaperCase::BankWorstCase, params);
  const Policy p(inst.game, PolicySpec::bank_pessimistic(Value(1), Value(1) / 100));
  const auto t = simulate(p, inst.order, PlayerModel::Pessimistic, TieBreak::NewFirst);
  EXPECT_TRUE(check_non_wasteful(t, inst.game).holds);
  // recomputed from the snapshots directly
  for (const auto& step : t.steps) {
    for (std::size_t k = 0; k < step.structure.blocks.size(); ++k) {
      Value mass = step.ledger.bank[k];
      for (PlayerId q : step.structure.blocks[k].members()) mass += step.ledger.firm[q];
      EXPECT_EQ(mass, inst.game(step.structure.blocks[k]));
    }
  }
}

TEST(NonWasteful, DetectsACorruptedLedger) {
  const auto inst = ir_bound();
  auto t = simulate(inst.game, inst.order, PolicySpec::amc(), PlayerModel::Greedy, TieBreak::NewFirst);
  t.steps[1].ledger.firm[1] += 1;
  const AxiomVerdict v = check_non_wasteful(t, inst.game);
  ASSERT_FALSE(v.holds);
  ASSERT_TRUE(v.counterexample);
  EXPECT_EQ(v.counterexample->step, 2);
  EXPECT_EQ(v.counterexample->coalition, Coalition(0b010));
  EXPECT_EQ(v.counterexample->observed, Value(2));
  EXPECT_EQ(v.counterexample->reference, Value(1));
}

TEST(Irrevocable, HoldsForIrrevocablePolicies) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_instance(2 + i % 5, Value(1), Value(7) / 2, rng());
    for (auto spec : {PolicySpec::amc(), PolicySpec::amc_h_threshold(), PolicySpec::oracle_pair()}) {
      const auto t = simulate(g, shuffled(g.n(), rng), spec, PlayerModel::Greedy, TieBreak::NewFirst);
      EXPECT_TRUE(check_irrevocable(t).holds);
    }
  }
}

TEST(Irrevocable, FailsWhenABankPromiseMoves) {
  const auto inst = ir_bound();
  const auto t = simulate(inst.game, inst.order, PolicySpec::bank_greedy(Value(1)), PlayerModel::Greedy,
                          TieBreak::NewFirst);
  const AxiomVerdict v = check_irrevocable(t);
  ASSERT_FALSE(v.holds);
  const Counterexample& cx = *v.counterexample;
  ASSERT_TRUE(cx.player);
  ASSERT_GE(cx.step, 2);
  // the earlier snapshot really did hold more for that player
  const AllocationLedger& before = t.steps[cx.step - 2].ledger;
  const AllocationLedger& after = t.steps[cx.step - 1].ledger;
  EXPECT_EQ(after.total(*cx.player), cx.observed);
  EXPECT_GT(before.total(*cx.player), after.total(*cx.player));
}

TEST(Irrevocable, SinglePlayerTraceHoldsForEveryPolicy) {
  const auto g = CharacteristicFunction::from_table(1, {Value(0), Value(2)}, Value(1), Value(5));
  for (auto spec : {PolicySpec::amc(), PolicySpec::amc_h(Value(1)), PolicySpec::oracle_pair(),
                    PolicySpec::bank_greedy(Value(1)), PolicySpec::bank_pessimistic(Value(1), Value(1) / 2)})
    EXPECT_TRUE(check_irrevocable(simulate(g, ArrivalOrder::identity(1), spec, PlayerModel::Greedy,
                                           TieBreak::NewFirst))
                    .holds);
}

TEST(IndividualRationality, IrrevocablePoliciesAreIr) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_instance(2 + i % 5, Value(1), Value(6), rng());
    const ArrivalOrder order = shuffled(g.n(), rng);
    for (auto spec : {PolicySpec::amc(), PolicySpec::amc_h_threshold(), PolicySpec::oracle_pair()})
      for (const auto& t : simulate_all_branches(Policy(g, spec), order, PlayerModel::Greedy))
        EXPECT_TRUE(check_ir(t, g).holds);
  }
}

TEST(IndividualRationality, BankGreedyDropsThePreviousPromiseHolder) {
  const auto inst = ir_bound();
  const auto t = simulate(inst.game, inst.order, PolicySpec::bank_greedy(Value(1)), PlayerModel::Greedy,
                          TieBreak::NewFirst);
  const AxiomVerdict v = check_ir(t, inst.game);
  ASSERT_FALSE(v.holds);
  ASSERT_TRUE(v.counterexample->player);
  EXPECT_EQ(v.counterexample->reference, inst.game(Coalition::singleton(*v.counterexample->player)));
  EXPECT_LT(v.counterexample->observed, v.counterexample->reference);
}

TEST(IndividualRationality, AllSingletonsHold) {
  const auto inst = ir_bound();
  const auto t = simulate(inst.game, inst.order, PolicySpec::amc(), PlayerModel::Greedy, TieBreak::NewFirst);
  ASSERT_EQ(t.final_structure.blocks.size(), 3u);
  EXPECT_TRUE(check_ir(t, inst.game).holds);
  for (int p = 0; p < 3; ++p) EXPECT_EQ(t.final_ledger.firm[p], Value(1));
}

TEST(TemporalNashStability, AmcIsStable) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const auto g = random_instance(2 + i % 5, Value(1), Value(5), rng(), i % 2 ? std::optional<Value>(Value(1)) : std::nullopt);
    const Policy p(g, PolicySpec::amc());
    for (const auto& t : simulate_all_branches(p, shuffled(g.n(), rng), PlayerModel::Greedy))
      EXPECT_TRUE(check_tns(t, p).holds);
  }
}

TEST(TemporalNashStability, AmcHWitnessIsRecheckable) {
  InstanceParams params;
  params.h = 1;
  const auto inst = paper_instance(PaperCase::AmcHStabilityWitness, params);
  const Policy p(inst.game, PolicySpec::amc_h(Value(1)));
  const auto t = simulate(p, inst.order, PlayerModel::Greedy, TieBreak::NewFirst);
  const AxiomVerdict v = check_tns(t, p);
  ASSERT_FALSE(v.holds);
  const Counterexample& cx = *v.counterexample;
  ASSERT_TRUE(cx.player);
  EXPECT_EQ(*cx.player, 2);  // a3
  EXPECT_EQ(cx.coalition, Coalition(0b1010));
  EXPECT_EQ(cx.observed, t.final_ledger.firm[2]);
  EXPECT_EQ(cx.observed, Value(2));
  EXPECT_EQ(cx.reference, Value(5) / 2);
  EXPECT_EQ(hypothetical_allocation(p, cx.coalition.with(2), inst.order)[2], cx.reference);
}

TEST(TemporalNashStability, GridSearchFindsAWitnessForUnitThreshold) {
  // independent of the analytic construction: scan 4-player games on {1, ..., 5} and every order
  const GridFamily grid = grid_family(4, Value(1), Value(5), Value(1), true);
  std::size_t scanned = 0;
  bool found = false;
  for (std::size_t i = 0; i < grid.tables.size() && !found; ++i) {
    const CharacteristicFunction g = grid.game(i);
    const Policy p(g, PolicySpec::amc_h(Value(1)));
    std::vector<PlayerId> seq{0, 1, 2, 3};
    do {
      ++scanned;
      found = !check_tns(simulate(p, ArrivalOrder(seq), PlayerModel::Greedy, TieBreak::NewFirst), p).holds;
    } while (!found && std::next_permutation(seq.begin(), seq.end()));
  }
  EXPECT_TRUE(found) << scanned << " runs scanned";
}

TEST(TemporalNashStability, SinglePlayerHolds) {
  const auto g = CharacteristicFunction::from_table(1, {Value(0), Value(2)}, Value(1), Value(5));
  const Policy p(g, PolicySpec::amc_h(Value(1)));
  EXPECT_TRUE(check_tns(simulate(p, ArrivalOrder::identity(1), PlayerModel::Greedy, TieBreak::NewFirst), p).holds);
}

TEST(NonAnticipation, AmcAndAmcHHold) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto g = random_instance(3 + i % 3, Value(1), i % 2 ? Value(5) / 2 : Value(5), rng());
    const ArrivalOrder order = shuffled(g.n(), rng);
    const AxiomVerdict a = check_non_anticipative(PolicySpec::amc(), g, order, 100, rng());
    const AxiomVerdict b = check_non_anticipative(PolicySpec::amc_h_threshold(), g, order, 100, rng());
    EXPECT_TRUE(a.holds);
    EXPECT_TRUE(b.holds);
    EXPECT_GT(a.trials + b.trials, 0u);
  }
}

TEST(NonAnticipation, OraclePairViolationIsRecheckable) {
  const CharacteristicFunction g = oracle_flip_game();
  const ArrivalOrder order = ArrivalOrder::identity(3);
  const AxiomVerdict v = check_non_anticipative(PolicySpec::oracle_pair(), g, order, 200, 7);
  ASSERT_FALSE(v.holds);
  const Counterexample& cx = *v.counterexample;
  ASSERT_TRUE(cx.mutated_game);
  const CharacteristicFunction& w = *cx.mutated_game;
  // the mutated game agrees on every subset of the prefix and differs elsewhere
  bool differs = false;
  for (std::uint32_t s = 1; s < 8; ++s) {
    if (Coalition(s).subset_of(cx.coalition)) {
      EXPECT_EQ(w(Coalition(s)), g(Coalition(s)));
    } else if (w(Coalition(s)) != g(Coalition(s))) {
      differs = true;
    }
  }
  EXPECT_TRUE(differs);
  const auto before = hypothetical_allocation(Policy(g, PolicySpec::oracle_pair()), cx.coalition, order);
  const auto after = hypothetical_allocation(Policy(w, PolicySpec::oracle_pair()), cx.coalition, order);
  EXPECT_NE(before, after);
  EXPECT_EQ(after[*cx.player], cx.observed);
  EXPECT_EQ(before[*cx.player], cx.reference);
}

TEST(NonAnticipation, CornerGameReportsNoValidMutation) {
  // every value at min = max leaves no room to perturb
  std::vector<Value> t(8, Value(1));
  t[0] = 0;
  const auto g = CharacteristicFunction::from_table(3, t, Value(1), Value(1));
  const AxiomVerdict v = check_non_anticipative(PolicySpec::amc(), g, ArrivalOrder::identity(3), 10, 1);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.trials, 0u);
  EXPECT_NE(v.note.find("NoValidMutation"), std::string::npos);
}
