#include "ocg/ratio.hpp"

#include "ocg/error.hpp"
#include "ocg/instances.hpp"
#include "ocg/optimal.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

namespace ocg {

const char* to_string(RatioMode mode) {
  switch (mode) {
    case RatioMode::AllOrdersAllTies: return "all-orders-all-ties";
    case RatioMode::AllOrdersFixedTie: return "all-orders-fixed-tie";
    case RatioMode::Sampled: return "sampled";
  }
  return "unknown";
}

namespace {

unsigned worker_count(unsigned requested, std::size_t tasks) {
  unsigned jobs = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(tasks, 1)));
}

/// Runs body(worker, begin, end) over dynamically claimed chunks of
/// [0, count). Rethrows the first captured exception.
template <class Body>
void parallel_chunks(std::size_t count, unsigned jobs, std::size_t chunk, Body body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](unsigned worker) {
    try {
      for (;;) {
        const std::size_t begin = next.fetch_add(chunk);
        if (begin >= count) return;
        body(worker, begin, std::min(count, begin + chunk));
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(count);
    }
  };
  if (jobs <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<PlayerId> nth_permutation(int n, std::size_t index) {
  std::vector<PlayerId> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::size_t> factorial(n + 1, 1);
  for (int i = 1; i <= n; ++i) factorial[i] = factorial[i - 1] * i;
  std::vector<PlayerId> out;
  for (int left = n; left > 0; --left) {
    const std::size_t pick = index / factorial[left - 1];
    index %= factorial[left - 1];
    out.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

struct Candidate {
  bool set = false;
  Value welfare;
  std::size_t index = 0;
  std::vector<PlayerId> order;
  CoalitionStructure structure;
  std::size_t runs = 0;
  std::size_t largest = 0;
  std::size_t orders = 0;

  // Welfare ranks candidates because the optimum is shared.
  void offer(const Value& w, std::size_t idx, std::span<const PlayerId> ord, const CoalitionStructure& s) {
    if (!set || w < welfare || (w == welfare && idx < index)) {
      set = true;
      welfare = w;
      index = idx;
      order.assign(ord.begin(), ord.end());
      structure = s;
    }
  }

  void merge(const Candidate& other) {
    runs += other.runs;
    largest = std::max(largest, other.largest);
    orders += other.orders;
    if (other.set) offer(other.welfare, other.index, other.order, other.structure);
  }
};

void evaluate_order(const Policy& policy, PlayerModel model, const ArrivalOrder& order, TieBreak tie,
                    std::size_t cap, std::size_t index, Candidate& into) {
  const BranchOutcomes outcomes = explore_outcomes(policy, order, model, tie, cap);
  into.runs += outcomes.runs;
  ++into.orders;
  for (const auto& s : outcomes.structures) {
    into.largest = std::max(into.largest, s.largest_block());
    into.offer(social_welfare(s, policy.game()), index, order.players(), s);
  }
}

RatioReport finish_report(const Policy& policy, Candidate best) {
  const OptimalResult opt = optimal_partition(policy.game());
  RatioReport report;
  report.greedy_welfare = best.welfare;
  report.optimal_welfare = opt.best_welfare;
  report.ratio = best.welfare / opt.best_welfare;
  report.witness_order = ArrivalOrder(std::move(best.order));
  report.witness_structure = std::move(best.structure);
  report.optimal_structure = opt.structure;
  report.orders_examined = best.orders;
  report.branches_examined = best.runs;
  report.largest_greedy_block = best.largest;
  return report;
}

}  // namespace

RatioReport competitive_ratio(const Policy& policy, PlayerModel model, const RatioOptions& options) {
  const int n = policy.game().n();
  const TieBreak tie = options.mode == RatioMode::AllOrdersFixedTie ? options.fixed_tie : TieBreak::Enumerate;
  std::vector<std::vector<PlayerId>> sampled;
  std::size_t count = 0;
  if (options.mode == RatioMode::Sampled) {
    if (options.samples == 0) throw Error(ErrorKind::InvalidInput, "sampled mode needs at least one sample");
    std::mt19937_64 rng(options.seed);
    std::vector<PlayerId> order(n);
    for (std::size_t k = 0; k < options.samples; ++k) {
      std::iota(order.begin(), order.end(), 0);
      for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng() % static_cast<std::uint64_t>(i + 1)]);
      sampled.push_back(order);
    }
    count = sampled.size();
  } else {
    if (n > kMaxRatioPlayers)
      throw Error(ErrorKind::TooManyPlayers, "all-order ratio is limited to " + std::to_string(kMaxRatioPlayers) +
                                                 " players; use sampled mode");
    count = 1;
    for (int i = 2; i <= n; ++i) count *= static_cast<std::size_t>(i);
  }

  const unsigned jobs = worker_count(options.jobs, count / 32 + 1);
  std::vector<Candidate> partial(jobs);
  parallel_chunks(count, jobs, 32, [&](unsigned worker, std::size_t begin, std::size_t end) {
    Candidate& local = partial[worker];
    if (!sampled.empty()) {
      for (std::size_t i = begin; i < end; ++i)
        evaluate_order(policy, model, ArrivalOrder(sampled[i]), tie, options.branch_cap, i, local);
      return;
    }
    std::vector<PlayerId> perm = nth_permutation(n, begin);
    for (std::size_t i = begin; i < end; ++i) {
      evaluate_order(policy, model, ArrivalOrder(perm), tie, options.branch_cap, i, local);
      std::next_permutation(perm.begin(), perm.end());
    }
  });
  Candidate best;
  for (const auto& c : partial) best.merge(c);
  return finish_report(policy, std::move(best));
}

RatioReport competitive_ratio(const CharacteristicFunction& game, const PolicySpec& spec, PlayerModel model,
                              const RatioOptions& options) {
  return competitive_ratio(Policy(game, spec), model, options);
}

RatioReport order_ratio(const Policy& policy, PlayerModel model, const ArrivalOrder& order, TieBreak tie,
                        std::size_t branch_cap) {
  if (order.size() != policy.game().n()) throw Error(ErrorKind::InvalidOrder, "order does not cover every player");
  Candidate best;
  evaluate_order(policy, model, order, tie, branch_cap, 0, best);
  return finish_report(policy, std::move(best));
}

std::string instance_hash(const CharacteristicFunction& game) {
  std::string text = std::to_string(game.n()) + ";" + format_value(game.min()) + ";" + format_value(game.max());
  for (const Value& v : game.table()) text += ";" + format_value(v);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FamilyReport family_ratio(const PolicySpec& spec, PlayerModel model, const FamilySpec& family,
                          const RatioOptions& options, std::size_t budget, const FamilyObserver& observer) {
  std::vector<GridFamily> grids;
  std::size_t count = 0;
  switch (family.kind) {
    case FamilySpec::Kind::Grid: {
      const Value step = family.step.value_or((family.max - family.min) / 4);
      for (int n : family.sizes) {
        grids.push_back(grid_family(n, family.min, family.max, step, family.canonical_only));
        count += grids.back().tables.size();
      }
      break;
    }
    case FamilySpec::Kind::Random: count = family.count; break;
    case FamilySpec::Kind::List: count = family.games.size(); break;
  }
  if (count == 0) throw Error(ErrorKind::BadParams, "family is empty");
  if (family.kind == FamilySpec::Kind::Random && family.sizes.empty())
    throw Error(ErrorKind::BadParams, "random family needs at least one size");

  auto instance = [&](std::size_t i) -> CharacteristicFunction {
    switch (family.kind) {
      case FamilySpec::Kind::Grid:
        for (const auto& g : grids) {
          if (i < g.tables.size()) return g.game(i);
          i -= g.tables.size();
        }
        break;
      case FamilySpec::Kind::Random:
        return random_instance(family.sizes[i % family.sizes.size()], family.min, family.max, family.seed + i,
                               family.step);
      case FamilySpec::Kind::List: return family.games[i];
    }
    throw Error(ErrorKind::BadParams, "family index out of range");
  };

  RatioOptions per_instance = options;
  per_instance.jobs = 1;
  const unsigned jobs = worker_count(options.jobs, count);
  constexpr std::size_t kBatch = 2048;
  FamilyReport out;
  out.instances = count;
  std::atomic<std::size_t> runs{0};
  for (std::size_t base = 0; base < count; base += kBatch) {
    const std::size_t size = std::min(kBatch, count - base);
    std::vector<std::optional<CharacteristicFunction>> games(size);
    std::vector<std::optional<RatioReport>> reports(size);
    parallel_chunks(size, jobs, 1, [&](unsigned, std::size_t begin, std::size_t end) {
      for (std::size_t j = begin; j < end; ++j) {
        games[j] = instance(base + j);
        reports[j] = competitive_ratio(Policy(*games[j], spec), model, per_instance);
        if (runs.fetch_add(reports[j]->branches_examined) + reports[j]->branches_examined > budget)
          throw Error(ErrorKind::BudgetExceeded, "family run exceeded its simulation budget");
      }
    });
    for (std::size_t j = 0; j < size; ++j) {
      const CharacteristicFunction& game = *games[j];
      const RatioReport& report = *reports[j];
      FamilyRow row;
      row.instance_hash = instance_hash(game);
      row.n = game.n();
      row.delta = game.delta();
      row.ratio = report.ratio;
      row.largest_greedy_block = report.largest_greedy_block;
      row.largest_optimal_block = report.optimal_structure.largest_block();
      if (family.bound) {
        row.bound = family.bound(game);
        row.margin = report.ratio - *row.bound;
        if (*row.margin < 0) ++out.violations;
      }
      out.rows.push_back(std::move(row));
      if (!out.worst_game || report.ratio < out.worst.ratio) {
        out.worst = report;
        out.worst_game = game;
        out.worst_index = base + j;
      }
      if (observer) observer(base + j, game, report);
    }
  }
  out.total_runs = runs.load();
  return out;
}

}  // namespace ocg
