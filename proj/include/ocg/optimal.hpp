#pragma once

#include "ocg/game.hpp"

#include <optional>
#include <vector>

namespace ocg {

inline constexpr int kMaxDpPlayers = 16;
inline constexpr int kMaxBruteForcePlayers = 8;

struct OptimalResult {
  Value best_welfare;
  /// Canonical optimum: lexicographically smallest sorted block-mask list.
  CoalitionStructure structure;
  std::optional<std::size_t> optimal_count;
};

/// Subset DP: best[M] = max over nonempty submasks s of v(s) + best[M - s].
/// Throws Error(TooManyPlayers) above 16 players.
OptimalResult optimal_partition(const CharacteristicFunction& game);

/// Enumerates every set partition (restricted-growth strings). Independent
/// of the DP; up to 8 players.
OptimalResult brute_force_partition(const CharacteristicFunction& game);

/// Every welfare-maximizing partition, canonical form, via enumeration.
std::vector<CoalitionStructure> all_optimal_partitions(const CharacteristicFunction& game);

}  // namespace ocg
