#pragma once

#include "ocg/value.hpp"

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ocg {

/// Arrival-independent player index; player i is bit i of a coalition mask.
using PlayerId = int;

inline constexpr int kMaxTablePlayers = 20;
inline constexpr int kDefaultMaxPlayers = 10;

class Coalition {
 public:
  constexpr Coalition() = default;
  constexpr explicit Coalition(std::uint32_t mask) : mask_(mask) {}

  static constexpr Coalition singleton(PlayerId i) { return Coalition(1u << i); }
  static constexpr Coalition all(int n) { return Coalition(n >= 32 ? ~0u : (1u << n) - 1u); }

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool contains(PlayerId i) const { return (mask_ >> i) & 1u; }
  constexpr Coalition with(PlayerId i) const { return Coalition(mask_ | (1u << i)); }
  constexpr Coalition without(PlayerId i) const { return Coalition(mask_ & ~(1u << i)); }
  constexpr bool subset_of(Coalition other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool intersects(Coalition other) const { return (mask_ & other.mask_) != 0; }
  /// Highest member index, -1 when empty.
  constexpr int top() const { return empty() ? -1 : 31 - std::countl_zero(mask_); }

  std::vector<PlayerId> members() const;

  friend constexpr Coalition operator|(Coalition a, Coalition b) { return Coalition(a.mask_ | b.mask_); }
  friend constexpr Coalition operator&(Coalition a, Coalition b) { return Coalition(a.mask_ & b.mask_); }
  friend constexpr Coalition operator-(Coalition a, Coalition b) { return Coalition(a.mask_ & ~b.mask_); }
  friend constexpr auto operator<=>(Coalition, Coalition) = default;

 private:
  std::uint32_t mask_ = 0;
};

enum class IssueKind { BadTableSize, TooManyPlayers, EmptyNotZero, NotMonotone, OutOfBounds, BadBounds };

struct GameIssue {
  IssueKind kind;
  Coalition subset;    // NotMonotone: the smaller coalition; OutOfBounds: the offender
  Coalition superset;  // NotMonotone only

  std::string describe() const;
};

const char* to_string(IssueKind kind);

struct ValidationResult;

/// Monotone, bounded characteristic function over n players. Immutable;
/// only validate_game produces one, so every instance satisfies the
/// invariants v(empty) = 0, monotonicity and min <= v(S) <= max for S != empty.
class CharacteristicFunction {
 public:
  int n() const { return n_; }
  const Value& min() const { return min_; }
  const Value& max() const { return max_; }
  const Value& operator()(Coalition s) const { return values_[s.mask()]; }
  std::span<const Value> table() const { return values_; }
  Coalition players() const { return Coalition::all(n_); }

  /// Unique delta with delta*min <= max < (delta+1)*min.
  int delta() const { return delta_; }

  /// Throws Error(InvalidGame) listing every issue when the table is invalid.
  static CharacteristicFunction from_table(int n, std::vector<Value> table, Value min, Value max,
                                           int max_players = kDefaultMaxPlayers);

  friend bool operator==(const CharacteristicFunction&, const CharacteristicFunction&) = default;

 private:
  CharacteristicFunction(int n, std::vector<Value> values, Value min, Value max);
  friend ValidationResult validate_game(int, std::vector<Value>, Value, Value, int);

  int n_ = 0;
  std::vector<Value> values_;
  Value min_;
  Value max_;
  int delta_ = 0;
};

struct ValidationResult {
  std::optional<CharacteristicFunction> game;
  std::vector<GameIssue> issues;

  bool ok() const { return game.has_value(); }
};

/// Checks table size, v(empty) = 0, bounds and monotonicity. Monotonicity
/// is reported on covering pairs (S, S + {i}), which is equivalent to the
/// full S subset-of T condition.
ValidationResult validate_game(int n, std::vector<Value> table, Value min, Value max,
                               int max_players = kDefaultMaxPlayers);

int delta_class(const Value& min, const Value& max);
inline int delta_class(const CharacteristicFunction& game) { return game.delta(); }

/// Upward closure v(S) := max(v(S), max over T subset-of S of v(T)).
std::vector<Value> monotone_closure(int n, std::vector<Value> table);

class ArrivalOrder {
 public:
  ArrivalOrder() = default;
  /// Throws Error(InvalidOrder) unless `sequence` is a permutation of 0..n-1.
  explicit ArrivalOrder(std::vector<PlayerId> sequence);
  static ArrivalOrder identity(int n);

  int size() const { return static_cast<int>(sequence_.size()); }
  /// Player arriving at 0-based step t.
  PlayerId at(int t) const { return sequence_[t]; }
  /// 0-based arrival step of player i.
  int position(PlayerId i) const { return position_[i]; }
  std::span<const PlayerId> players() const { return sequence_; }
  /// The first t arrivals.
  Coalition prefix(int t) const;

  friend bool operator==(const ArrivalOrder& a, const ArrivalOrder& b) { return a.sequence_ == b.sequence_; }

 private:
  std::vector<PlayerId> sequence_;
  std::vector<int> position_;
};

struct SubOrder {
  std::vector<PlayerId> players;
  bool is_prefix = false;
};

SubOrder sub_order(const ArrivalOrder& order, Coalition coalition);

struct CoalitionStructure {
  std::vector<Coalition> blocks;

  Coalition support() const;
  std::size_t largest_block() const;
  /// Blocks sorted by mask; two structures are the same partition iff
  /// their canonical forms are equal.
  CoalitionStructure canonical() const;

  friend bool operator==(const CoalitionStructure&, const CoalitionStructure&) = default;
};

/// Lexicographic comparison of sorted block-mask lists.
bool lex_less(const CoalitionStructure& a, const CoalitionStructure& b);

/// Sum of block values; throws Error(OverlappingBlocks) if blocks intersect.
Value social_welfare(const CoalitionStructure& structure, const CharacteristicFunction& game);

}  // namespace ocg
