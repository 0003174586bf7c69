#include "ocg/optimal.hpp"

#include "ocg/error.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

namespace ocg {

namespace {

class LexMinReconstruction {
 public:
  LexMinReconstruction(const CharacteristicFunction& game, const std::vector<Value>& best)
      : game_(game), best_(best), n_(game.n()), memo_((std::size_t{1} << n_) * (n_ + 1), kUnknown) {}

  CoalitionStructure build() {
    CoalitionStructure out;
    std::uint32_t rest = game_.players().mask();
    int floor_top = -1;
    while (rest != 0) {
      // Disjoint blocks sort by their highest member, so the sorted list is
      // built front to back by always taking the smallest feasible block.
      std::uint32_t s = 0;
      bool found = false;
      do {
        s = (s - rest) & rest;  // next submask in increasing order
        if (s != 0 && usable(rest, s, floor_top)) {
          found = true;
          break;
        }
      } while (s != rest);
      if (!found) throw Error(ErrorKind::InvalidGame, "optimal reconstruction failed");
      out.blocks.push_back(Coalition(s));
      rest &= ~s;
      floor_top = Coalition(s).top();
    }
    return out;
  }

 private:
  static constexpr std::int8_t kUnknown = -1;

  bool usable(std::uint32_t rest, std::uint32_t s, int floor_top) {
    const int top = Coalition(s).top();
    return top > floor_top && game_(Coalition(s)) + best_[rest & ~s] == best_[rest] && feasible(rest & ~s, top);
  }

  // Can `rest` be split optimally into blocks whose highest member exceeds floor_top?
  bool feasible(std::uint32_t rest, int floor_top) {
    if (rest == 0) return true;
    auto& slot = memo_[static_cast<std::size_t>(rest) * (n_ + 1) + (floor_top + 1)];
    if (slot != kUnknown) return slot == 1;
    bool ok = false;
    if (Coalition(rest).top() > floor_top) {
      for (std::uint32_t s = rest; s != 0 && !ok; s = (s - 1) & rest) ok = usable(rest, s, floor_top);
    }
    slot = ok ? 1 : 0;
    return ok;
  }

  const CharacteristicFunction& game_;
  const std::vector<Value>& best_;
  int n_;
  std::vector<std::int8_t> memo_;
};

}  // namespace

OptimalResult optimal_partition(const CharacteristicFunction& game) {
  const int n = game.n();
  if (n > kMaxDpPlayers) throw Error(ErrorKind::TooManyPlayers, "optimal_partition supports at most 16 players");
  const std::uint32_t full = game.players().mask();
  std::vector<Value> best(std::size_t{full} + 1, Value(0));
  for (std::uint32_t m = 1; m <= full; ++m) {
    // Fixing the lowest member's block avoids visiting each split twice.
    const std::uint32_t low = m & (~m + 1);
    const std::uint32_t others = m & ~low;
    Value top = game(Coalition(m));
    for (std::uint32_t sub = others; sub != 0; sub = (sub - 1) & others) {
      const std::uint32_t block = low | (others & ~sub);
      Value candidate = game(Coalition(block)) + best[sub];
      if (candidate > top) top = std::move(candidate);
    }
    best[m] = std::move(top);
  }
  OptimalResult out;
  out.best_welfare = best[full];
  out.structure = LexMinReconstruction(game, best).build();
  return out;
}

namespace {

// Visits every partition of {0..n-1} as a restricted-growth string.
void for_each_partition(int n, const std::function<void(const CoalitionStructure&)>& visit) {
  std::vector<int> label(n, 0);
  CoalitionStructure scratch;
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == n) {
      scratch.blocks.assign(blocks, Coalition());
      for (int p = 0; p < n; ++p) scratch.blocks[label[p]] = scratch.blocks[label[p]].with(p);
      visit(scratch);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      label[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  label[0] = 0;
  rec(1, 1);
}

void require_small(const CharacteristicFunction& game) {
  if (game.n() > kMaxBruteForcePlayers)
    throw Error(ErrorKind::TooManyPlayers, "brute-force partition enumeration supports at most 8 players");
}

}  // namespace

OptimalResult brute_force_partition(const CharacteristicFunction& game) {
  require_small(game);
  OptimalResult out;
  bool have = false;
  std::size_t count = 0;
  for_each_partition(game.n(), [&](const CoalitionStructure& p) {
    Value w(0);
    for (Coalition b : p.blocks) w += game(b);
    const CoalitionStructure canon = p.canonical();
    if (!have || w > out.best_welfare) {
      out.best_welfare = w;
      out.structure = canon;
      count = 1;
      have = true;
    } else if (w == out.best_welfare) {
      ++count;
      if (lex_less(canon, out.structure)) out.structure = canon;
    }
  });
  out.optimal_count = count;
  return out;
}

std::vector<CoalitionStructure> all_optimal_partitions(const CharacteristicFunction& game) {
  require_small(game);
  std::vector<CoalitionStructure> out;
  Value best(-1);
  for_each_partition(game.n(), [&](const CoalitionStructure& p) {
    Value w(0);
    for (Coalition b : p.blocks) w += game(b);
    if (w > best) {
      best = w;
      out.clear();
    }
    if (w == best) out.push_back(p.canonical());
  });
  return out;
}

}  // namespace ocg
