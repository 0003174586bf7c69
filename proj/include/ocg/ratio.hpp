#pragma once

#include "ocg/simulator.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace ocg {

enum class RatioMode { AllOrdersAllTies, AllOrdersFixedTie, Sampled };

const char* to_string(RatioMode mode);

inline constexpr int kMaxRatioPlayers = 8;

struct RatioOptions {
  RatioMode mode = RatioMode::AllOrdersAllTies;
  TieBreak fixed_tie = TieBreak::NewFirst;  // AllOrdersFixedTie; Sampled uses Enumerate
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  unsigned jobs = 0;  // 0: one worker per available processor
  std::size_t branch_cap = kDefaultBranchCap;  // complete runs per order
};

struct RatioReport {
  Value ratio;
  ArrivalOrder witness_order;
  CoalitionStructure witness_structure;
  Value greedy_welfare;
  Value optimal_welfare;
  CoalitionStructure optimal_structure;
  std::size_t orders_examined = 0;
  std::size_t branches_examined = 0;
  /// Largest block over every greedy structure reached, not only the witness.
  std::size_t largest_greedy_block = 0;
};

/// Minimum of SW(greedy) / SW(optimal) over the orders (and tie branches)
/// selected by `options`. Ties between equal ratios keep the order that
/// comes first lexicographically (or in sampling order), so the report does
/// not depend on the worker count. Throws Error(TooManyPlayers) for
/// all-order modes above 8 players.
RatioReport competitive_ratio(const Policy& policy, PlayerModel model, const RatioOptions& options);
RatioReport competitive_ratio(const CharacteristicFunction& game, const PolicySpec& spec, PlayerModel model,
                              const RatioOptions& options);

/// Same quantity restricted to one arrival order.
RatioReport order_ratio(const Policy& policy, PlayerModel model, const ArrivalOrder& order,
                        TieBreak tie = TieBreak::Enumerate, std::size_t branch_cap = kDefaultBranchCap);

struct FamilySpec {
  enum class Kind { Grid, Random, List };
  Kind kind = Kind::Random;
  std::vector<int> sizes{3};
  Value min{1};
  Value max{5};
  /// Grid: defaults to (max - min) / 4. Random: optional value lattice.
  std::optional<Value> step;
  bool canonical_only = true;  // Grid: one game per relabeling class
  std::size_t count = 100;     // Random: number of games, sizes used round-robin
  std::uint64_t seed = 0;      // Random: game i uses seed + i
  std::vector<CharacteristicFunction> games;  // List
  /// Optional lower bound the ratio is certified against.
  std::function<Value(const CharacteristicFunction&)> bound;
};

struct FamilyRow {
  std::string instance_hash;
  int n = 0;
  int delta = 0;
  Value ratio;
  std::optional<Value> bound;
  std::optional<Value> margin;  // ratio - bound
  std::size_t largest_greedy_block = 0;
  std::size_t largest_optimal_block = 0;
};

struct FamilyReport {
  RatioReport worst;
  std::optional<CharacteristicFunction> worst_game;
  std::size_t worst_index = 0;
  std::size_t instances = 0;
  std::size_t violations = 0;
  std::size_t total_runs = 0;
  std::vector<FamilyRow> rows;
};

using FamilyObserver = std::function<void(std::size_t index, const CharacteristicFunction&, const RatioReport&)>;

/// Infimum of competitive_ratio over a family. Instances are evaluated in
/// parallel and reduced in index order. Throws Error(BudgetExceeded) once
/// more than `budget` complete runs have been simulated.
FamilyReport family_ratio(const PolicySpec& spec, PlayerModel model, const FamilySpec& family,
                          const RatioOptions& options,
                          std::size_t budget = std::numeric_limits<std::size_t>::max(),
                          const FamilyObserver& observer = {});

/// FNV-1a over the canonical text of the table, 16 hex digits.
std::string instance_hash(const CharacteristicFunction& game);

}  // namespace ocg
