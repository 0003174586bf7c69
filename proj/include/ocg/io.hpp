#pragma once

#include "ocg/axioms.hpp"
#include "ocg/error.hpp"
#include "ocg/optimal.hpp"
#include "ocg/ratio.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace ocg {

using Json = nlohmann::ordered_json;

/// Player names for one instance: default names a0 .. a(n-1), optionally
/// overridden by an alias list. Lookups accept both; an alias wins when it
/// collides with a default name.
class PlayerNames {
 public:
  PlayerNames() = default;
  PlayerNames(int n, std::vector<std::string> aliases = {});
  int n() const { return n_; }
  const std::string& name(PlayerId i) const { return display_[i]; }
  const std::vector<std::string>& aliases() const { return aliases_; }
  /// Throws Error(InvalidInput) for unknown names.
  PlayerId lookup(std::string_view name) const;
  Json coalition(Coalition c) const;  // list of names, ascending index
  /// Comma-separated names, e.g. "x,y,z".
  ArrivalOrder parse_order(std::string_view csv) const;
  Coalition parse_coalition(std::string_view csv) const;

 private:
  int n_ = 0;
  std::vector<std::string> display_;
  std::vector<std::string> aliases_;
};

struct InstanceFile {
  CharacteristicFunction game;
  PlayerNames names;
};

/// Raised when a syntactically fine file describes an invalid game.
class GameValidationError : public Error {
 public:
  GameValidationError(std::vector<GameIssue> issues, const std::string& what)
      : Error(ErrorKind::InvalidGame, what), issues_(std::move(issues)) {}
  const std::vector<GameIssue>& issues() const { return issues_; }

 private:
  std::vector<GameIssue> issues_;
};

/// {"n", "min", "max", "aliases"?, "values": {"a0,a1": "p/q", ...}}; every
/// nonempty coalition must be listed.
Json instance_to_json(const CharacteristicFunction& game, const PlayerNames& names);
InstanceFile instance_from_json(const Json& doc, int max_players = kDefaultMaxPlayers);
InstanceFile read_instance(const std::string& path, int max_players = kDefaultMaxPlayers);

Json issues_to_json(const std::vector<GameIssue>& issues, const PlayerNames& names);
Json structure_to_json(const CoalitionStructure& s, const PlayerNames& names);
Json ledger_to_json(const AllocationLedger& ledger, const PlayerNames& names);
Json trace_to_json(const SimulationTrace& trace, const PlayerNames& names);
Json ratio_to_json(const RatioReport& report, const PlayerNames& names);
Json optimal_to_json(const OptimalResult& result, const PlayerNames& names);
Json verdict_to_json(const AxiomVerdict& verdict, const PlayerNames& names);
Json policy_to_json(const PolicySpec& spec);

/// instance_hash,n,delta,ratio,bound,margin
std::string family_csv(const FamilyReport& report);
Json family_to_json(const FamilyReport& report, bool include_rows);

/// "-" writes to stdout.
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace ocg
