#include "ocg/instances.hpp"

#include "ocg/error.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace ocg {

namespace {

struct CaseName {
  PaperCase id;
  const char* name;
};

constexpr CaseName kCaseNames[] = {
    {PaperCase::ThreeMinUpperBound, "thm-irrv3"},
    {PaperCase::AmcChain, "ex-amc-chain"},
    {PaperCase::AmcHTight, "thm-amchlb3-tight"},
    {PaperCase::AmcHStabilityWitness, "prop-htns-witness"},
    {PaperCase::IrUpperBound, "thm-nirrirub"},
    {PaperCase::NonAnticipativeFamily, "thm-nirrub-family"},
    {PaperCase::BankWorstCase, "thm-nirrlb-worst"},
};

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::BadParams, what); }

std::uint32_t mask_of(std::initializer_list<int> one_based) {
  std::uint32_t m = 0;
  for (int p : one_based) m |= 1u << (p - 1);
  return m;
}

std::uint32_t run_mask(int first, int last) {  // 1-based, inclusive
  std::uint32_t m = 0;
  for (int p = first; p <= last; ++p) m |= 1u << (p - 1);
  return m;
}

std::vector<std::string> numbered(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
  return names;
}

void require_class_at_least(const Value& min, const Value& max, int delta) {
  if (min <= 0 || max < min) bad("requires 0 < min <= max");
  if (delta_class(min, max) < delta) bad("requires max >= " + std::to_string(delta) + " min");
}

PaperInstance three_player_bound(const InstanceParams& p) {
  const Value max = p.max.value_or(Value(5));
  require_class_at_least(p.min, max, 3);
  const Value& lo = p.min;
  std::map<std::uint32_t, Value> pinned{{0b001, lo}, {0b010, lo},     {0b100, lo},    {0b011, lo},
                                        {0b101, 2 * lo}, {0b110, 2 * lo}, {0b111, max}};
  return {complete_by_closure(3, pinned, lo, max), ArrivalOrder::identity(3), {"x", "y", "z"}};
}

PaperInstance amc_chain(const InstanceParams& p) {
  const Value max = p.max.value_or(Value(5) / 2);
  if (p.delta < 1 || p.m < 1) bad("ex-amc-chain requires delta >= 1 and m >= 1");
  if (p.min <= 0 || max < p.min) bad("requires 0 < min <= max");
  if (delta_class(p.min, max) != p.delta) bad("max / min does not lie in the requested delta class");
  if (p.eps <= 0) bad("ex-amc-chain requires eps > 0");
  const int n = 2 * p.m * p.delta;
  if (n > kDefaultMaxPlayers) bad("ex-amc-chain with n = 2 m delta above the player limit");
  std::map<std::uint32_t, Value> pinned;
  for (int i = 1; i <= n; ++i) {
    for (int len = 1; len <= p.delta && i + len - 1 <= n; ++len)
      pinned[run_mask(i, i + len - 1)] = len * p.min + (len - 1) * p.eps;
    if (i + p.delta <= n) pinned[mask_of({i, i + p.delta})] = max;
  }
  return {complete_by_closure(n, pinned, p.min, max), ArrivalOrder::identity(n), numbered(n)};
}

PaperInstance amch_tight(const InstanceParams& p) {
  const Value max = p.max.value_or(Value(6));
  if (p.min <= 0 || p.eps <= 0) bad("thm-amchlb3-tight requires min > 0 and eps > 0");
  if (max < 4 * p.min + p.eps) bad("thm-amchlb3-tight requires max >= 4 min + eps");
  std::map<std::uint32_t, Value> pinned;
  for (std::uint32_t s = 1; s < 16; ++s) pinned[s] = max;
  for (int i = 1; i <= 4; ++i) pinned[mask_of({i})] = p.min;
  pinned[mask_of({1, 2})] = 4 * p.min + p.eps;
  pinned[mask_of({3, 4})] = 2 * p.min;
  pinned[mask_of({1, 4})] = 2 * p.min;
  pinned[mask_of({2, 3})] = 2 * p.min;
  return {complete_by_closure(4, pinned, p.min, max), ArrivalOrder::identity(4), numbered(4)};
}

// a3 joins a1 as the last joiner of {a1, a3}; had she joined a2 she would be
// followed by a4 and collect h on top of her own share.
PaperInstance stability_witness(const InstanceParams& p) {
  const Value& lo = p.min;
  if (lo <= 0 || p.h <= 0) bad("prop-htns-witness requires min > 0 and h > 0");
  const Value top = 3 * lo + 3 * p.h;
  const Value max = p.max.value_or(top);
  if (max < top) bad("prop-htns-witness requires max >= 3 min + 3 h");
  std::map<std::uint32_t, Value> pinned{
      {mask_of({1}), lo},
      {mask_of({2}), lo},
      {mask_of({3}), lo},
      {mask_of({4}), lo},
      {mask_of({1, 2}), lo},
      {mask_of({1, 3}), 2 * lo + 2 * p.h},
      {mask_of({2, 3}), 2 * lo + 3 * p.h / 2},
      {mask_of({2, 4}), 2 * lo + 3 * p.h / 2},
      {mask_of({2, 3, 4}), top},
  };
  return {complete_by_closure(4, pinned, lo, max), ArrivalOrder::identity(4), numbered(4)};
}

PaperInstance non_anticipative_family(const InstanceParams& p) {
  const Value max = p.max.value_or(Value(10));
  require_class_at_least(p.min, max, 3);
  const int k = p.k;
  if (k < 2) bad("thm-nirrub-family requires k >= 2");
  if (p.eps <= 0) bad("thm-nirrub-family requires eps > 0");
  std::map<std::uint32_t, Value> pinned;
  for (int i = 1; i <= k; ++i) {
    pinned[mask_of({i})] = p.min;
    pinned[run_mask(1, i)] = p.min + (i - 1) * p.eps;
  }
  if (p.branch == 'a') {
    const int n = k + 1;
    pinned[mask_of({n})] = p.min;
    pinned[run_mask(1, k - 1) | mask_of({n})] = 2 * p.min;
    pinned[mask_of({k, n})] = 2 * p.min;
    pinned[run_mask(1, n)] = max;
    return {complete_by_closure(n, pinned, p.min, max), ArrivalOrder::identity(n), numbered(n)};
  }
  if (p.branch != 'b') bad("thm-nirrub-family branch must be 'a' or 'b'");
  const int n = 2 * k;
  if (n > kDefaultMaxPlayers) bad("thm-nirrub-family with n = 2k above the player limit");
  pinned[run_mask(1, k + 1)] = max;
  for (int i = 1; i <= k; ++i) pinned[mask_of({i, k + i})] = max;
  // v(S) = |S| min on the tail a_{k+2} .. a_{2k}
  const std::uint32_t tail = run_mask(k + 2, n);
  for (std::uint32_t s = tail; s != 0; s = (s - 1) & tail) pinned[s] = std::popcount(s) * p.min;
  pinned[mask_of({k + 1})] = p.min;
  return {complete_by_closure(n, pinned, p.min, max), ArrivalOrder::identity(n), numbered(n)};
}

PaperInstance bank_worst_case(const InstanceParams& p) {
  const Value max = p.max.value_or(Value(10));
  require_class_at_least(p.min, max, 3);
  const int k = p.k;
  if (k < 2) bad("thm-nirrlb-worst requires k >= 2 (n > 2)");
  if (p.mu <= 0 || p.mu > 1) bad("thm-nirrlb-worst requires mu in (0, 1]");
  if (p.mu * max < p.min) bad("thm-nirrlb-worst requires mu max >= min");
  const int n = 2 * k;
  if (n > kDefaultMaxPlayers) bad("thm-nirrlb-worst with n = 2k above the player limit");
  std::map<std::uint32_t, Value> pinned;
  for (int i = 1; i <= n; ++i) pinned[mask_of({i})] = p.min;
  pinned[mask_of({1, k + 1})] = p.mu * max;
  for (int i = 2; i <= k; ++i) pinned[mask_of({i, k + i})] = max;
  pinned[run_mask(1, k)] = p.min;
  if (k + 2 <= n) pinned[run_mask(k + 2, n)] = p.min;
  return {complete_by_closure(n, pinned, p.min, max), ArrivalOrder::identity(n), numbered(n)};
}

}  // namespace

const char* to_string(PaperCase id) {
  for (const auto& c : kCaseNames)
    if (c.id == id) return c.name;
  return "unknown";
}

PaperCase parse_paper_case(std::string_view name) {
  for (const auto& c : kCaseNames)
    if (name == c.name) return c.id;
  throw Error(ErrorKind::InvalidInput, "unknown reference case '" + std::string(name) + "'");
}

CharacteristicFunction complete_by_closure(int n, const std::map<std::uint32_t, Value>& pinned, const Value& min,
                                           const Value& max) {
  if (n < 1 || n > kMaxTablePlayers) bad("player count out of range");
  const std::uint32_t size = 1u << n;
  std::vector<Value> table(size, min);
  table[0] = 0;
  for (const auto& [mask, value] : pinned) {
    if (mask == 0 || mask >= size) bad("pinned coalition outside the player set");
    table[mask] = value;
  }
  table = monotone_closure(n, std::move(table));
  for (const auto& [mask, value] : pinned)
    if (table[mask] != value)
      bad("completion overrides the pinned value of coalition " + std::to_string(mask) + " (parameters too coarse)");
  ValidationResult result = validate_game(n, std::move(table), min, max, kMaxTablePlayers);
  if (!result.ok()) bad("construction is not a valid game: " + result.issues.front().describe());
  return std::move(*result.game);
}

PaperInstance paper_instance(PaperCase id, const InstanceParams& params) {
  switch (id) {
    case PaperCase::ThreeMinUpperBound:
    case PaperCase::IrUpperBound: return three_player_bound(params);
    case PaperCase::AmcChain: return amc_chain(params);
    case PaperCase::AmcHTight: return amch_tight(params);
    case PaperCase::AmcHStabilityWitness: return stability_witness(params);
    case PaperCase::NonAnticipativeFamily: return non_anticipative_family(params);
    case PaperCase::BankWorstCase: return bank_worst_case(params);
  }
  bad("unknown reference case");
}

CharacteristicFunction random_instance(int n, const Value& min, const Value& max, std::uint64_t seed,
                                       const std::optional<Value>& grid) {
  if (min <= 0 || max < min) throw Error(ErrorKind::BadParams, "random_instance requires max >= min > 0");
  if (n < 1 || n > kMaxTablePlayers) throw Error(ErrorKind::TooManyPlayers, "random_instance player count out of range");
  Value step;
  std::uint64_t points;
  if (grid) {
    if (*grid <= 0) throw Error(ErrorKind::BadParams, "grid step must be positive");
    step = *grid;
    points = static_cast<std::uint64_t>(floor_integer((max - min) / step)) + 1;
  } else {
    points = 1001;
    step = (max - min) / 1000;
  }
  std::mt19937_64 rng(seed);
  const std::uint32_t size = 1u << n;
  std::vector<Value> table(size);
  table[0] = 0;
  for (std::uint32_t s = 1; s < size; ++s)
    table[s] = min + step * Value(static_cast<unsigned long long>(rng() % points));
  table = monotone_closure(n, std::move(table));
  return CharacteristicFunction::from_table(n, std::move(table), min, max, kMaxTablePlayers);
}

CharacteristicFunction GridFamily::game(std::size_t index) const {
  const auto& levels_of = tables.at(index);
  std::vector<Value> table(levels_of.size());
  table[0] = 0;
  for (std::size_t s = 1; s < levels_of.size(); ++s) table[s] = levels[levels_of[s]];
  return CharacteristicFunction::from_table(n, std::move(table), levels.front(), levels.back(), kMaxTablePlayers);
}

namespace {

class GridEnumerator {
 public:
  GridEnumerator(int n, int points, bool canonical_only, std::vector<std::vector<std::uint8_t>>& out)
      : n_(n), points_(points), canonical_only_(canonical_only), out_(out), current_(1u << n, 0) {
    if (canonical_only_) {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      while (std::next_permutation(perm.begin(), perm.end())) {  // identity skipped
        std::vector<std::uint32_t> image(1u << n);
        for (std::uint32_t s = 0; s < image.size(); ++s) {
          std::uint32_t t = 0;
          for (int p = 0; p < n; ++p)
            if (s >> p & 1u) t |= 1u << perm[p];
          image[s] = t;
        }
        relabelings_.push_back(std::move(image));
      }
    }
  }

  void run() { fill(1); }

 private:
  void fill(std::uint32_t s) {
    const std::uint32_t size = 1u << n_;
    if (s == size) {
      if (!canonical_only_ || is_canonical()) out_.push_back(current_);
      return;
    }
    int lo = 0;
    for (int p = 0; p < n_; ++p)
      if (s >> p & 1u) lo = std::max<int>(lo, current_[s & ~(1u << p)]);
    for (int level = lo; level < points_; ++level) {
      current_[s] = static_cast<std::uint8_t>(level);
      fill(s + 1);
    }
  }

  // Smallest level vector among all relabelings; ties keep the first.
  bool is_canonical() const {
    const std::uint32_t size = 1u << n_;
    for (const auto& image : relabelings_) {
      for (std::uint32_t s = 1; s < size; ++s) {
        // the relabelings form a group, so w[s] = current[image[s]] covers them all
        const std::uint8_t mine = current_[s];
        const std::uint8_t theirs = current_[image[s]];
        if (theirs < mine) return false;
        if (theirs > mine) break;
      }
    }
    return true;
  }

  int n_;
  int points_;
  bool canonical_only_;
  std::vector<std::vector<std::uint8_t>>& out_;
  std::vector<std::uint8_t> current_;
  std::vector<std::vector<std::uint32_t>> relabelings_;
};

}  // namespace

GridFamily grid_family(int n, const Value& min, const Value& max, const Value& step, bool canonical_only) {
  if (min <= 0 || max < min || step <= 0) throw Error(ErrorKind::BadParams, "grid requires max >= min > 0, step > 0");
  if (n < 1 || n > 5) throw Error(ErrorKind::TooManyPlayers, "exhaustive grids are limited to n <= 5");
  GridFamily family;
  family.n = n;
  for (Value v = min; v <= max; v += step) family.levels.push_back(v);
  if (family.levels.size() > 255) throw Error(ErrorKind::BadParams, "grid has too many points");
  GridEnumerator(n, static_cast<int>(family.levels.size()), canonical_only, family.tables).run();
  return family;
}

}  // namespace ocg
