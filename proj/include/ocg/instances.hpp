#pragma once

#include "ocg/game.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ocg {

enum class PaperCase {
  ThreeMinUpperBound,     // "thm-irrv3": three players x, y, z
  AmcChain,               // "ex-amc-chain": n = 2 m delta chain
  AmcHTight,              // "thm-amchlb3-tight": four players, ratio (6 + eps) / 12
  AmcHStabilityWitness,   // "prop-htns-witness": AMC-h with h > 0 is not TNS
  IrUpperBound,           // "thm-nirrirub": same table as ThreeMinUpperBound
  NonAnticipativeFamily,  // "thm-nirrub-family": two adversary branches
  BankWorstCase,          // "thm-nirrlb-worst": n = 2k
};

const char* to_string(PaperCase id);
PaperCase parse_paper_case(std::string_view name);

/// Unset bounds fall back to a per-case default.
struct InstanceParams {
  Value min{1};
  std::optional<Value> max;
  int delta = 2;
  int m = 1;
  int k = 2;
  Value mu{1};
  Value eps{Value(1) / 100};
  Value h{1};
  char branch = 'a';  // NonAnticipativeFamily: 'a' (n = k + 1) or 'b' (n = 2k)
};

struct PaperInstance {
  CharacteristicFunction game;
  ArrivalOrder order;
  std::vector<std::string> aliases;  // aliases[i] names player i
};

/// Builds the construction, completing unspecified coalitions by
/// v(S) = max(min, max over specified T subset-of S of v(T)). Throws
/// Error(BadParams) when the parameters violate the construction (wrong
/// class, eps too large, a pinned value overridden by the completion).
PaperInstance paper_instance(PaperCase id, const InstanceParams& params);

/// Completes a partial table (mask -> value) as described above; every
/// pinned value must survive unchanged.
CharacteristicFunction complete_by_closure(int n, const std::map<std::uint32_t, Value>& pinned, const Value& min,
                                           const Value& max);

/// Uniform values in [min, max] (on min + k step when `grid` is set, else on
/// a 1000-step lattice), then upward closure. Deterministic per seed.
CharacteristicFunction random_instance(int n, const Value& min, const Value& max, std::uint64_t seed,
                                       const std::optional<Value>& grid = std::nullopt);

/// Every monotone table with all nonempty values on {min, min + step, ..., max}.
/// With `canonical_only`, one representative per player-relabeling class
/// (the lexicographically smallest level vector).
struct GridFamily {
  int n = 0;
  std::vector<Value> levels;
  std::vector<std::vector<std::uint8_t>> tables;  // level index per mask, mask 0 unused
  CharacteristicFunction game(std::size_t index) const;
};

GridFamily grid_family(int n, const Value& min, const Value& max, const Value& step, bool canonical_only);

}  // namespace ocg
