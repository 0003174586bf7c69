#pragma once

#include "ocg/simulator.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace ocg {

enum class Axiom { NonWasteful, Irrevocable, NonAnticipative, IndividuallyRational, TemporalNashStable };

const char* to_string(Axiom axiom);

/// A violation, with enough context to re-check it independently.
struct Counterexample {
  int step = 0;  // 1-based arrival time; 0 means after the final payout
  std::optional<PlayerId> player;
  Coalition coalition;  // offending coalition / prefix / alternative block
  Value observed;       // what the run produced
  Value reference;      // what it was compared against
  std::optional<CharacteristicFunction> mutated_game;
  std::string description;
};

struct AxiomVerdict {
  Axiom axiom;
  bool holds = true;
  std::optional<Counterexample> counterexample;
  std::size_t trials = 0;
  std::string note;
};

/// Per coalition at every step: firm shares of members plus the bank equal
/// v(S), and the members' provisional shares equal the bank.
AxiomVerdict check_non_wasteful(const SimulationTrace& trace, const CharacteristicFunction& game);

/// No player's allocation (firm plus promised) or firm share ever
/// decreases, step over step and through the final payout.
AxiomVerdict check_irrevocable(const SimulationTrace& trace);

/// Statistical test: for each proper prefix S of `order`, `trials` games
/// that agree with `game` on every subset of S but differ elsewhere must
/// yield the same allocation over S. "Holds" means no violation found; a
/// game with no room to perturb is reported in `note`, not failed.
AxiomVerdict check_non_anticipative(const PolicySpec& spec, const CharacteristicFunction& game,
                                    const ArrivalOrder& order, std::size_t trials, std::uint64_t seed);

/// Every member of every coalition holds at least v({i}), at every step and
/// after the payout.
AxiomVerdict check_ir(const SimulationTrace& trace, const CharacteristicFunction& game);

/// No player could have earned strictly more by founding alone or by
/// joining, at her arrival, a final coalition already started.
AxiomVerdict check_tns(const SimulationTrace& trace, const Policy& policy);

}  // namespace ocg
