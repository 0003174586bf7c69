#pragma once

#include "ocg/policy.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace ocg {

enum class PlayerModel { Greedy, Pessimistic };
enum class TieBreak { NewFirst, EarliestCoalition, Enumerate };

const char* to_string(PlayerModel model);
const char* to_string(TieBreak tie);

inline constexpr std::size_t kDefaultBranchCap = 1'000'000;

struct SimulationStep {
  int t = 0;  // 1-based arrival time
  PlayerId player = 0;
  std::vector<Offer> offers;  // empty target first, then coalitions in founding order
  Coalition chosen;
  CoalitionStructure structure;  // after the join
  AllocationLedger ledger;       // after the join
};

struct SimulationTrace {
  ArrivalOrder order;
  std::vector<SimulationStep> steps;
  CoalitionStructure final_structure;  // founding order
  AllocationLedger final_ledger;       // after bank payout
  Value welfare;
};

/// One greedy run with a deterministic tie rule. Throws Error(InvalidInput)
/// for TieBreak::Enumerate.
SimulationTrace simulate(const Policy& policy, const ArrivalOrder& order, PlayerModel model, TieBreak tie);
SimulationTrace simulate(const CharacteristicFunction& game, const ArrivalOrder& order, const PolicySpec& spec,
                         PlayerModel model, TieBreak tie);

/// Every resolution of argmax ties, deduplicated by final structure; the
/// first trace is the NewFirst one. Throws Error(BranchExplosion) when more
/// than `cap` complete runs would be explored.
std::vector<SimulationTrace> simulate_all_branches(const Policy& policy, const ArrivalOrder& order,
                                                   PlayerModel model, std::size_t cap = kDefaultBranchCap);

/// Lightweight branch exploration used by the ratio evaluator: distinct
/// final structures (canonical form, first-seen order) and the number of
/// complete runs explored.
struct BranchOutcomes {
  std::vector<CoalitionStructure> structures;
  std::size_t runs = 0;
};

BranchOutcomes explore_outcomes(const Policy& policy, const ArrivalOrder& order, PlayerModel model, TieBreak tie,
                                std::size_t cap = kDefaultBranchCap);

/// Allocation the policy produces if exactly `coalition` forms, members
/// joining in their relative arrival order, banks paid out at the end.
/// Indexed by player; non-members get 0.
std::vector<Value> hypothetical_allocation(const Policy& policy, Coalition coalition, const ArrivalOrder& order);

}  // namespace ocg
