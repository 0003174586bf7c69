#include "ocg/axioms.hpp"

#include "ocg/error.hpp"

#include <random>

namespace ocg {

const char* to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::NonWasteful: return "non-wasteful";
    case Axiom::Irrevocable: return "irrevocable";
    case Axiom::NonAnticipative: return "non-anticipative";
    case Axiom::IndividuallyRational: return "individually-rational";
    case Axiom::TemporalNashStable: return "temporal-nash-stable";
  }
  return "unknown";
}

namespace {

AxiomVerdict fail(Axiom axiom, Counterexample cx) {
  AxiomVerdict v{axiom};
  v.holds = false;
  v.counterexample = std::move(cx);
  return v;
}

std::optional<Counterexample> conservation_issue(const CoalitionStructure& structure, const AllocationLedger& led,
                                                 const CharacteristicFunction& game, int step) {
  for (std::size_t k = 0; k < structure.blocks.size(); ++k) {
    const Coalition s = structure.blocks[k];
    Value firm(0);
    Value promised(0);
    for (PlayerId p : s.members()) {
      firm += led.firm[p];
      promised += led.provisional[p];
    }
    const Value& bank = led.bank[k];
    if (firm + bank != game(s))
      return Counterexample{step, std::nullopt, s, firm + bank, game(s), {}, "allocated mass differs from v(S)"};
    if (promised != bank)
      return Counterexample{step, std::nullopt, s, promised, bank, {}, "promised shares differ from the bank"};
  }
  return std::nullopt;
}

}  // namespace

AxiomVerdict check_non_wasteful(const SimulationTrace& trace, const CharacteristicFunction& game) {
  for (const auto& step : trace.steps)
    if (auto cx = conservation_issue(step.structure, step.ledger, game, step.t))
      return fail(Axiom::NonWasteful, std::move(*cx));
  if (auto cx = conservation_issue(trace.final_structure, trace.final_ledger, game, 0))
    return fail(Axiom::NonWasteful, std::move(*cx));
  return {Axiom::NonWasteful};
}

AxiomVerdict check_irrevocable(const SimulationTrace& trace) {
  const std::size_t n = trace.final_ledger.firm.size();
  std::vector<Value> firm(n, Value(0));
  std::vector<Value> total(n, Value(0));
  auto scan = [&](const AllocationLedger& led, int step) -> std::optional<Counterexample> {
    for (std::size_t i = 0; i < n; ++i) {
      const PlayerId p = static_cast<PlayerId>(i);
      if (led.total(p) < total[i])
        return Counterexample{step, p, {}, led.total(p), total[i], {}, "allocation decreased"};
      if (led.firm[i] < firm[i])
        return Counterexample{step, p, {}, led.firm[i], firm[i], {}, "firm share decreased"};
      firm[i] = led.firm[i];
      total[i] = led.total(p);
    }
    return std::nullopt;
  };
  for (const auto& step : trace.steps)
    if (auto cx = scan(step.ledger, step.t)) return fail(Axiom::Irrevocable, std::move(*cx));
  if (auto cx = scan(trace.final_ledger, 0)) return fail(Axiom::Irrevocable, std::move(*cx));
  return {Axiom::Irrevocable};
}

AxiomVerdict check_ir(const SimulationTrace& trace, const CharacteristicFunction& game) {
  auto scan = [&](const CoalitionStructure& structure, const AllocationLedger& led,
                  int step) -> std::optional<Counterexample> {
    for (Coalition s : structure.blocks)
      for (PlayerId p : s.members()) {
        const Value& alone = game(Coalition::singleton(p));
        if (led.total(p) < alone)
          return Counterexample{step, p, s, led.total(p), alone, {}, "allocation below the singleton value"};
      }
    return std::nullopt;
  };
  for (const auto& step : trace.steps)
    if (auto cx = scan(step.structure, step.ledger, step.t)) return fail(Axiom::IndividuallyRational, std::move(*cx));
  if (auto cx = scan(trace.final_structure, trace.final_ledger, 0))
    return fail(Axiom::IndividuallyRational, std::move(*cx));
  return {Axiom::IndividuallyRational};
}

AxiomVerdict check_tns(const SimulationTrace& trace, const Policy& policy) {
  const ArrivalOrder& order = trace.order;
  const auto& blocks = trace.final_structure.blocks;
  auto founded_at = [&](Coalition s) {
    int first = order.size();
    for (PlayerId p : s.members()) first = std::min(first, order.position(p));
    return first;
  };
  for (Coalition home : blocks) {
    for (PlayerId i : home.members()) {
      const int arrival = order.position(i);
      const Value& actual = trace.final_ledger.firm[i];
      std::vector<Coalition> alternatives{Coalition()};
      for (Coalition other : blocks)
        if (other != home && founded_at(other) < arrival) alternatives.push_back(other);
      for (Coalition alt : alternatives) {
        const Value candidate = hypothetical_allocation(policy, alt.with(i), order)[i];
        if (candidate > actual)
          return fail(Axiom::TemporalNashStable,
                      {arrival + 1, i, alt, actual, candidate, {}, "player would have earned more elsewhere"});
      }
    }
  }
  return {Axiom::TemporalNashStable};
}

namespace {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

/// Perturbs 1-3 coalitions that reach outside `prefix`, each within the
/// interval that keeps the table monotone and bounded.
std::optional<std::vector<Value>> mutate_outside(const CharacteristicFunction& game, Coalition prefix,
                                                 std::mt19937_64& rng) {
  const int n = game.n();
  const std::uint32_t size = 1u << n;
  std::vector<Value> table(game.table().begin(), game.table().end());
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t k = 1; k < size; ++k)
    if (!Coalition(k).subset_of(prefix)) candidates.push_back(k);

  auto interval = [&](std::uint32_t k) {
    Value lo = game.min();
    Value hi = game.max();
    for (PlayerId p = 0; p < n; ++p) {
      const std::uint32_t bit = 1u << p;
      if (k & bit) {
        if (table[k & ~bit] > lo) lo = table[k & ~bit];
      } else if (table[k | bit] < hi) {
        hi = table[k | bit];
      }
    }
    return std::pair{lo, hi};
  };

  constexpr std::uint64_t kSteps = 16;
  const std::uint64_t wanted = 1 + draw(rng, 3);
  std::uint64_t changed = 0;
  for (std::size_t attempt = 0; attempt < 8 * candidates.size() && changed < wanted; ++attempt) {
    const std::uint32_t k = candidates[draw(rng, candidates.size())];
    auto [lo, hi] = interval(k);
    if (lo >= hi) continue;
    Value next = lo + (hi - lo) * Value(static_cast<long long>(draw(rng, kSteps + 1))) / Value(kSteps);
    if (next == table[k]) continue;
    table[k] = std::move(next);
    ++changed;
  }
  if (changed == 0) return std::nullopt;
  return table;
}

}  // namespace

AxiomVerdict check_non_anticipative(const PolicySpec& spec, const CharacteristicFunction& game,
                                    const ArrivalOrder& order, std::size_t trials, std::uint64_t seed) {
  AxiomVerdict verdict{Axiom::NonAnticipative};
  std::mt19937_64 rng(seed);
  const Policy base(game, spec);
  std::size_t skipped_prefixes = 0;
  for (int t = 1; t < order.size(); ++t) {
    const Coalition prefix = order.prefix(t);
    const std::vector<Value> reference = hypothetical_allocation(base, prefix, order);
    for (std::size_t trial = 0; trial < trials; ++trial) {
      auto table = mutate_outside(game, prefix, rng);
      if (!table) {
        ++skipped_prefixes;
        break;
      }
      ValidationResult mutated = validate_game(game.n(), std::move(*table), game.min(), game.max(), kMaxTablePlayers);
      if (!mutated.ok()) continue;
      ++verdict.trials;
      const std::vector<Value> alloc = hypothetical_allocation(Policy(*mutated.game, spec), prefix, order);
      for (PlayerId p : prefix.members()) {
        if (alloc[p] != reference[p]) {
          verdict.holds = false;
          verdict.counterexample =
              Counterexample{t, p, prefix, alloc[p], reference[p], std::move(*mutated.game),
                             "allocation over the prefix changed when only future values changed"};
          return verdict;
        }
      }
    }
  }
  if (skipped_prefixes > 0)
    verdict.note = "NoValidMutation: " + std::to_string(skipped_prefixes) + " prefix(es) had no room to perturb";
  return verdict;
}

}  // namespace ocg
