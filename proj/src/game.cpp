#include "ocg/game.hpp"

#include "ocg/error.hpp"

#include <algorithm>

namespace ocg {

std::vector<PlayerId> Coalition::members() const {
  std::vector<PlayerId> out;
  out.reserve(size());
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

namespace {

std::string mask_text(Coalition s) {
  std::string out = "{";
  bool first = true;
  for (PlayerId i : s.members()) {
    if (!first) out += ",";
    out += "a" + std::to_string(i);
    first = false;
  }
  return out + "}";
}

}  // namespace

const char* to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::BadTableSize: return "BadTableSize";
    case IssueKind::TooManyPlayers: return "TooManyPlayers";
    case IssueKind::EmptyNotZero: return "EmptyNotZero";
    case IssueKind::NotMonotone: return "NotMonotone";
    case IssueKind::OutOfBounds: return "OutOfBounds";
    case IssueKind::BadBounds: return "BadBounds";
  }
  return "Unknown";
}

std::string GameIssue::describe() const {
  switch (kind) {
    case IssueKind::NotMonotone:
      return "NotMonotone(" + mask_text(subset) + "," + mask_text(superset) + ")";
    case IssueKind::OutOfBounds:
      return "OutOfBounds(" + mask_text(subset) + ")";
    default:
      return to_string(kind);
  }
}

CharacteristicFunction::CharacteristicFunction(int n, std::vector<Value> values, Value min, Value max)
    : n_(n), values_(std::move(values)), min_(std::move(min)), max_(std::move(max)) {
  delta_ = delta_class(min_, max_);
}

CharacteristicFunction CharacteristicFunction::from_table(int n, std::vector<Value> table, Value min,
                                                          Value max, int max_players) {
  ValidationResult r = validate_game(n, std::move(table), std::move(min), std::move(max), max_players);
  if (!r.ok()) {
    std::string what = "invalid game:";
    for (const auto& issue : r.issues) what += " " + issue.describe();
    throw Error(ErrorKind::InvalidGame, what);
  }
  return std::move(*r.game);
}

ValidationResult validate_game(int n, std::vector<Value> table, Value min, Value max, int max_players) {
  ValidationResult result;
  auto& issues = result.issues;
  if (n < 1 || n > std::min(max_players, kMaxTablePlayers)) {
    issues.push_back({IssueKind::TooManyPlayers, {}, {}});
    return result;
  }
  const std::size_t size = std::size_t{1} << n;
  if (table.size() != size) {
    issues.push_back({IssueKind::BadTableSize, {}, {}});
    return result;
  }
  if (min <= 0 || max < min) issues.push_back({IssueKind::BadBounds, {}, {}});
  if (table[0] != 0) issues.push_back({IssueKind::EmptyNotZero, {}, {}});

  for (std::uint32_t s = 1; s < size; ++s) {
    if (table[s] < min || table[s] > max) issues.push_back({IssueKind::OutOfBounds, Coalition(s), {}});
  }
  for (std::uint32_t t = 1; t < size; ++t) {
    for (std::uint32_t rest = t; rest != 0; rest &= rest - 1) {
      const std::uint32_t s = t & ~(rest & (~rest + 1));
      if (s != 0 && table[s] > table[t])
        issues.push_back({IssueKind::NotMonotone, Coalition(s), Coalition(t)});
    }
  }
  if (issues.empty())
    result.game = CharacteristicFunction(n, std::move(table), std::move(min), std::move(max));
  return result;
}

int delta_class(const Value& min, const Value& max) {
  return static_cast<int>(floor_integer(max / min).convert_to<long long>());
}

std::vector<Value> monotone_closure(int n, std::vector<Value> table) {
  const std::uint32_t size = 1u << n;
  // Increasing mask order visits every proper subset before its supersets.
  for (std::uint32_t t = 1; t < size; ++t) {
    for (std::uint32_t rest = t; rest != 0; rest &= rest - 1) {
      const std::uint32_t s = t & ~(rest & (~rest + 1));
      if (table[s] > table[t]) table[t] = table[s];
    }
  }
  return table;
}

ArrivalOrder::ArrivalOrder(std::vector<PlayerId> sequence) : sequence_(std::move(sequence)) {
  const int n = static_cast<int>(sequence_.size());
  position_.assign(n, -1);
  for (int t = 0; t < n; ++t) {
    const PlayerId p = sequence_[t];
    if (p < 0 || p >= n || position_[p] != -1)
      throw Error(ErrorKind::InvalidOrder, "arrival order is not a permutation of 0..n-1");
    position_[p] = t;
  }
}

ArrivalOrder ArrivalOrder::identity(int n) {
  std::vector<PlayerId> seq(n);
  for (int i = 0; i < n; ++i) seq[i] = i;
  return ArrivalOrder(std::move(seq));
}

Coalition ArrivalOrder::prefix(int t) const {
  Coalition out;
  for (int k = 0; k < t; ++k) out = out.with(sequence_[k]);
  return out;
}

SubOrder sub_order(const ArrivalOrder& order, Coalition coalition) {
  SubOrder out;
  for (PlayerId p : order.players())
    if (coalition.contains(p)) out.players.push_back(p);
  out.is_prefix = order.prefix(static_cast<int>(out.players.size())) == coalition;
  return out;
}

Coalition CoalitionStructure::support() const {
  Coalition out;
  for (Coalition b : blocks) out = out | b;
  return out;
}

std::size_t CoalitionStructure::largest_block() const {
  std::size_t best = 0;
  for (Coalition b : blocks) best = std::max<std::size_t>(best, b.size());
  return best;
}

CoalitionStructure CoalitionStructure::canonical() const {
  CoalitionStructure out = *this;
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

bool lex_less(const CoalitionStructure& a, const CoalitionStructure& b) {
  const auto ca = a.canonical();
  const auto cb = b.canonical();
  return std::lexicographical_compare(ca.blocks.begin(), ca.blocks.end(), cb.blocks.begin(), cb.blocks.end());
}

Value social_welfare(const CoalitionStructure& structure, const CharacteristicFunction& game) {
  Coalition seen;
  Value total(0);
  for (Coalition b : structure.blocks) {
    if (b.intersects(seen)) throw Error(ErrorKind::OverlappingBlocks, "coalition structure blocks overlap");
    if (!b.subset_of(game.players()))
      throw Error(ErrorKind::InvalidInput, "coalition contains an unknown player");
    seen = seen | b;
    total += game(b);
  }
  return total;
}

}  // namespace ocg
