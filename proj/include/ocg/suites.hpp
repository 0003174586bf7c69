#pragma once

#include "ocg/io.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ocg {

/// Zero / unset fields select the suite's default.
struct SuiteOptions {
  int n = 0;               // largest player count
  std::size_t trials = 0;  // random games; for "axioms": mutation trials per prefix
  std::size_t games = 0;   // "axioms": number of random games
  std::uint64_t seed = 1;
  std::optional<Value> grid_step;
  std::optional<Value> h;             // "prop4.9"
  std::optional<PolicySpec> policy;   // "axioms"
  unsigned jobs = 0;
};

struct PropertyResult {
  std::string name;
  bool passed = true;
  bool required = true;  // informational results never fail the suite
  std::string detail;
  Json evidence;  // counterexample or witness
};

struct SuiteResult {
  std::string suite;
  std::vector<PropertyResult> properties;
  bool passed() const;
  Json to_json() const;
};

const std::vector<std::string>& suite_names();

/// Throws Error(InvalidInput) for an unknown suite name.
SuiteResult run_suite(std::string_view name, const SuiteOptions& options);

/// Three-player V2 game whose optimal pairing for {a0, a1} is overturned by
/// raising v({a0, a2}), which the oracle policy anticipates.
CharacteristicFunction oracle_flip_game();

/// Bound (min + sqrt(min (min + 4 max))) / (2 max), minus `slack`, as an
/// exact rational below the true value.
Value v2_bound(const Value& min, const Value& max, const Value& slack);
/// min{1/2, 3 min / max}.
Value v3_bound(const Value& min, const Value& max);

}  // namespace ocg
