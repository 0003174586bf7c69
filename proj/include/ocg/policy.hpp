#pragma once

#include "ocg/game.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ocg {

enum class PolicyKind { Amc, AmcH, OraclePair, BankGreedy, BankPessimistic };

const char* to_string(PolicyKind kind);
/// Accepts the wire names "amc", "amc-h", "oracle-pair", "bank-greedy", "bank-pessimistic".
PolicyKind parse_policy_kind(std::string_view name);

struct PolicySpec {
  PolicyKind kind = PolicyKind::Amc;
  Value h{0};    // AmcH
  Value mu{1};   // bank policies, in (0, 1]
  Value eps{0};  // BankPessimistic, must be < 1/n^2 for the game it runs on
  /// OraclePair target structure. Left empty, binding computes the
  /// canonical optimal structure of the game.
  std::optional<CoalitionStructure> target;
  /// AmcH: replace `h` by paper_threshold(game) when the Policy is built.
  bool h_from_threshold = false;

  static PolicySpec amc() { return {}; }
  static PolicySpec amc_h(Value h) { return {PolicyKind::AmcH, std::move(h), Value(1), Value(0), {}}; }
  static PolicySpec amc_h_threshold() {
    PolicySpec spec = amc_h(Value(0));
    spec.h_from_threshold = true;
    return spec;
  }
  static PolicySpec oracle_pair(std::optional<CoalitionStructure> target = {}) {
    return {PolicyKind::OraclePair, Value(0), Value(1), Value(0), std::move(target)};
  }
  static PolicySpec bank_greedy(Value mu) { return {PolicyKind::BankGreedy, Value(0), std::move(mu), Value(0), {}}; }
  static PolicySpec bank_pessimistic(Value mu, Value eps) {
    return {PolicyKind::BankPessimistic, Value(0), std::move(mu), std::move(eps), {}};
  }

  bool irrevocable() const {
    return kind == PolicyKind::Amc || kind == PolicyKind::AmcH || kind == PolicyKind::OraclePair;
  }
};

/// Per-player firm (paid, never clawed back) and provisional (promised,
/// held in a coalition bank) shares plus one bank balance per coalition.
/// `bank` runs parallel to the forming coalitions in founding order.
struct AllocationLedger {
  std::vector<Value> firm;
  std::vector<Value> provisional;
  std::vector<Value> bank;

  Value total(PlayerId i) const { return firm[i] + provisional[i]; }
  friend bool operator==(const AllocationLedger&, const AllocationLedger&) = default;
};

struct FormingCoalition {
  Coalition members;
  std::vector<PlayerId> arrivals;  // members in arrival order

  PlayerId last_joiner() const { return arrivals.back(); }
};

/// Coalitions formed so far (founding order) together with the ledger.
struct FormationState {
  explicit FormationState(int n);

  std::vector<FormingCoalition> coalitions;
  AllocationLedger ledger;
  Coalition arrived;

  CoalitionStructure structure() const;
  /// Index of the coalition whose member set equals `target`.
  std::optional<std::size_t> find(Coalition target) const;
};

/// What player i would be allocated at the moment of joining `target`
/// (empty target = founding a new coalition).
struct Offer {
  Coalition target;
  Value total;  // evaluated by greedy players
  Value firm;   // evaluated by pessimistic players
};

/// v(S + {i}) - v(S). Throws Error(PlayerAlreadyMember) when i is in S.
Value marginal_contribution(const CharacteristicFunction& game, Coalition members_before, PlayerId i);

/// A PolicySpec bound to one game: parameters are validated against it and
/// the oracle structure is fixed.
class Policy {
 public:
  Policy(const CharacteristicFunction& game, PolicySpec spec);

  const PolicySpec& spec() const { return spec_; }
  const CharacteristicFunction& game() const { return game_; }
  bool irrevocable() const { return spec_.irrevocable(); }
  /// OraclePair only.
  const CoalitionStructure& target_structure() const { return target_; }

  Offer offer(const FormationState& state, PlayerId i, Coalition target) const;
  /// Adds i to `target` (or founds a new coalition) and updates the ledger.
  void apply_join(FormationState& state, PlayerId i, Coalition target) const;
  /// End of run: every bank is paid out to its promise-holders.
  void settle(FormationState& state) const;

 private:
  bool below_threshold(const Value& coalition_value) const;
  bool in_target(Coalition c) const;

  CharacteristicFunction game_;
  PolicySpec spec_;
  CoalitionStructure target_;
};

/// Threshold h making AMC-h competitive on the game's delta class:
/// 0 for delta = 1, a rational lower approximation of
/// sqrt(min(min + 4 max)) - 3 min (within 1e-9 relative error on the root)
/// for delta = 2, min for delta = 3 and 2 min for delta >= 4.
Value paper_threshold(const Value& min, const Value& max);
inline Value paper_threshold(const CharacteristicFunction& game) { return paper_threshold(game.min(), game.max()); }

}  // namespace ocg
