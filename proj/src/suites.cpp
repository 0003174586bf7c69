#include "ocg/suites.hpp"

#include "ocg/error.hpp"
#include "ocg/instances.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <tuple>

namespace ocg {

bool SuiteResult::passed() const {
  for (const auto& p : properties)
    if (p.required && !p.passed) return false;
  return true;
}

Json SuiteResult::to_json() const {
  Json out;
  out["suite"] = suite;
  out["passed"] = passed();
  Json props = Json::array();
  for (const auto& p : properties) {
    Json jp;
    jp["name"] = p.name;
    jp["passed"] = p.passed;
    if (!p.required) jp["required"] = false;
    if (!p.detail.empty()) jp["detail"] = p.detail;
    if (!p.evidence.is_null()) jp["evidence"] = p.evidence;
    props.push_back(std::move(jp));
  }
  out["properties"] = std::move(props);
  return out;
}

CharacteristicFunction oracle_flip_game() {
  const Value one(1);
  const Value three_halves = Value(3) / 2;
  return CharacteristicFunction::from_table(
      3, {Value(0), one, one, Value(9) / 4, one, three_halves, three_halves, Value(5) / 2}, one, Value(5) / 2);
}

Value v2_bound(const Value& min, const Value& max, const Value& slack) {
  const Value root = sqrt_lower(min * (min + 4 * max), Value(1) / Value(1'000'000'000'000LL));
  return (min + root) / (2 * max) - slack;
}

Value v3_bound(const Value& min, const Value& max) {
  const Value three = 3 * min / max;
  return three < Value(1) / 2 ? three : Value(1) / 2;
}

namespace {

std::size_t pick(std::size_t requested, std::size_t fallback) { return requested != 0 ? requested : fallback; }

/// Random game i of a suite: n cycles through 2 .. n_max.
CharacteristicFunction suite_game(const SuiteOptions& o, std::size_t i, int n_max, const Value& min,
                                  const Value& max) {
  const int n = 2 + static_cast<int>(i % static_cast<std::size_t>(n_max - 1));
  return random_instance(n, min, max, o.seed * 1'000'003ull + i, o.grid_step);
}

/// Upper bounds of the classes cycled through by mixed-class suites (min = 1).
const std::vector<Value>& mixed_maxima() {
  static const std::vector<Value> maxima{Value(3) / 2, Value(5) / 2, Value(7) / 2, Value(5), Value(10)};
  return maxima;
}

RatioOptions all_ties(const SuiteOptions& o) {
  RatioOptions r;
  r.jobs = o.jobs;
  return r;
}

std::string game_label(std::size_t i, const CharacteristicFunction& g) {
  return "game " + std::to_string(i) + " (n=" + std::to_string(g.n()) + ", hash " + instance_hash(g) + ")";
}

PropertyResult ratio_one(const SuiteOptions& o, const std::string& name, const PolicySpec& spec, const Value& max,
                         std::size_t count, int n_max, bool expect_singletons, bool expect_target) {
  PropertyResult result{name};
  for (std::size_t i = 0; i < count; ++i) {
    const CharacteristicFunction game = suite_game(o, i, n_max, Value(1), max);
    const Policy policy(game, spec);
    const RatioReport report = competitive_ratio(policy, PlayerModel::Greedy, all_ties(o));
    std::string why;
    if (report.ratio != 1) why = "ratio " + format_value(report.ratio);
    if (expect_singletons && report.largest_greedy_block != 1) why = "a greedy block has more than one player";
    if (expect_target && why.empty()) {
      const CoalitionStructure target = policy.target_structure().canonical();
      std::vector<PlayerId> order(game.n());
      std::iota(order.begin(), order.end(), 0);
      do {
        const BranchOutcomes out = explore_outcomes(policy, ArrivalOrder(order), PlayerModel::Greedy,
                                                    TieBreak::Enumerate);
        for (const auto& s : out.structures)
          if (!(s == target)) why = "greedy structure differs from the oracle structure";
      } while (why.empty() && std::next_permutation(order.begin(), order.end()));
    }
    if (!why.empty()) {
      const PlayerNames names(game.n());
      result.passed = false;
      result.detail = game_label(i, game) + ": " + why;
      result.evidence["instance"] = instance_to_json(game, names);
      result.evidence["report"] = ratio_to_json(report, names);
      return result;
    }
  }
  result.detail = std::to_string(count) + " games";
  return result;
}

SuiteResult v1_ratio_suite(const SuiteOptions& o) {
  return {"thm4.1",
          {ratio_one(o, "amc ratio 1 and singleton structures on V1", PolicySpec::amc(), Value(19) / 10,
                     pick(o.trials, 500), o.n != 0 ? o.n : 6, true, false)}};
}

SuiteResult oracle_suite(const SuiteOptions& o) {
  SuiteResult s{"thm4.2"};
  s.properties.push_back(ratio_one(o, "oracle-pair ratio 1 and greedy structure = optimal on V2",
                                   PolicySpec::oracle_pair(), Value(5) / 2, pick(o.trials, 500),
                                   o.n != 0 ? o.n : 6, false, true));
  const CharacteristicFunction flip = oracle_flip_game();
  const AxiomVerdict v =
      check_non_anticipative(PolicySpec::oracle_pair(), flip, ArrivalOrder::identity(3), 200, o.seed);
  PropertyResult na{"oracle-pair is anticipative (violation witness found)"};
  na.passed = !v.holds;
  na.evidence = verdict_to_json(v, PlayerNames(3));
  s.properties.push_back(std::move(na));
  return s;
}

/// Block-size lemma over random games, all orders and tie branches.
PropertyResult block_sizes(const SuiteOptions& o, const std::string& name, bool threshold) {
  PropertyResult result{name};
  const std::size_t count = pick(o.trials, 200);
  const int n_max = o.n != 0 ? o.n : 6;
  for (std::size_t i = 0; i < count; ++i) {
    const Value& max = mixed_maxima()[i % mixed_maxima().size()];
    const CharacteristicFunction game = suite_game(o, i, n_max, Value(1), max);
    const PolicySpec spec = threshold ? PolicySpec::amc_h_threshold() : PolicySpec::amc();
    const Policy policy(game, spec);
    const RatioReport report = competitive_ratio(policy, PlayerModel::Greedy, all_ties(o));
    const int delta = game.delta();
    const std::size_t bound =
        threshold ? static_cast<std::size_t>(ceil_integer(Value(delta) * game.min() / (game.min() + policy.spec().h)))
                  : static_cast<std::size_t>(delta);
    std::size_t optimal_largest = 0;
    for (const auto& s : all_optimal_partitions(game)) optimal_largest = std::max(optimal_largest, s.largest_block());
    if (report.largest_greedy_block > bound || optimal_largest > static_cast<std::size_t>(delta)) {
      result.passed = false;
      result.detail = game_label(i, game) + ": greedy block " + std::to_string(report.largest_greedy_block) +
                      " (bound " + std::to_string(bound) + "), optimal block " + std::to_string(optimal_largest) +
                      " (bound " + std::to_string(delta) + ")";
      result.evidence["instance"] = instance_to_json(game, PlayerNames(game.n()));
      return result;
    }
  }
  result.detail = std::to_string(count) + " games";
  return result;
}

/// Runs `check` on every tie branch of one random order per game.
PropertyResult trace_property(const SuiteOptions& o, const std::string& name, const PolicySpec& spec,
                              std::size_t count, const std::function<AxiomVerdict(const SimulationTrace&,
                                                                                  const Policy&)>& check) {
  PropertyResult result{name};
  const int n_max = o.n != 0 ? o.n : 6;
  std::mt19937_64 rng(o.seed);
  for (std::size_t i = 0; i < count; ++i) {
    const Value& max = mixed_maxima()[i % mixed_maxima().size()];
    const CharacteristicFunction game = suite_game(o, i, n_max, Value(1), max);
    std::vector<PlayerId> order(game.n());
    std::iota(order.begin(), order.end(), 0);
    for (int k = game.n() - 1; k > 0; --k) std::swap(order[k], order[rng() % static_cast<std::uint64_t>(k + 1)]);
    const Policy policy(game, spec);
    for (const auto& trace : simulate_all_branches(policy, ArrivalOrder(order), PlayerModel::Greedy)) {
      const AxiomVerdict v = check(trace, policy);
      if (!v.holds) {
        const PlayerNames names(game.n());
        result.passed = false;
        result.detail = game_label(i, game);
        result.evidence["instance"] = instance_to_json(game, names);
        result.evidence["trace"] = trace_to_json(trace, names);
        result.evidence["verdict"] = verdict_to_json(v, names);
        return result;
      }
    }
  }
  result.detail = std::to_string(count) + " games";
  return result;
}

SuiteResult ir_suite(const SuiteOptions& o) {
  SuiteResult s{"prop4.1"};
  const std::size_t count = pick(o.trials, 300);
  auto ir = [](const SimulationTrace& t, const Policy& p) { return check_ir(t, p.game()); };
  s.properties.push_back(trace_property(o, "amc traces are IR", PolicySpec::amc(), count, ir));
  s.properties.push_back(trace_property(o, "amc-h (threshold h) traces are IR", PolicySpec::amc_h_threshold(), count, ir));
  s.properties.push_back(trace_property(o, "oracle-pair traces are IR", PolicySpec::oracle_pair(), count, ir));
  return s;
}

SuiteResult amc_tns_suite(const SuiteOptions& o) {
  auto tns = [](const SimulationTrace& t, const Policy& p) { return check_tns(t, p); };
  return {"prop4.2", {trace_property(o, "amc traces are TNS", PolicySpec::amc(), pick(o.trials, 500), tns)}};
}

SuiteResult amch_tns_suite(const SuiteOptions& o) {
  SuiteResult s{"prop4.9"};
  std::vector<Value> hs;
  if (o.h) {
    hs.push_back(*o.h);
  } else {
    hs = {Value(1) / 4, Value(1) / 2, Value(1), Value(2), Value(3)};
  }
  for (const Value& h : hs) {
    InstanceParams params;
    params.h = h;
    PropertyResult p{"amc-h with h=" + format_value(h) + " violates TNS"};
    if (h <= 0) {
      p.passed = false;
      p.detail = "h must be positive; amc-h with h = 0 is amc";
      s.properties.push_back(std::move(p));
      continue;
    }
    const PaperInstance inst = paper_instance(PaperCase::AmcHStabilityWitness, params);
    const Policy policy(inst.game, PolicySpec::amc_h(h));
    const PlayerNames names(inst.game.n(), inst.aliases);
    p.passed = false;
    for (const auto& trace : simulate_all_branches(policy, inst.order, PlayerModel::Greedy)) {
      const AxiomVerdict v = check_tns(trace, policy);
      if (!v.holds) {
        p.passed = true;
        p.evidence["instance"] = instance_to_json(inst.game, names);
        p.evidence["trace"] = trace_to_json(trace, names);
        p.evidence["verdict"] = verdict_to_json(v, names);
        break;
      }
    }
    if (!p.passed) p.detail = "no violation on the witness instance";
    s.properties.push_back(std::move(p));
  }
  auto tns = [](const SimulationTrace& t, const Policy& pol) { return check_tns(t, pol); };
  s.properties.push_back(
      trace_property(o, "amc-h with h=0 is TNS", PolicySpec::amc_h(Value(0)), pick(o.trials, 200), tns));
  return s;
}

PropertyResult family_property(const SuiteOptions& o, const std::string& name, FamilySpec family) {
  PropertyResult result{name};
  const FamilyReport report =
      family_ratio(PolicySpec::amc_h_threshold(), PlayerModel::Greedy, family, all_ties(o));
  result.passed = report.violations == 0;
  result.detail = std::to_string(report.instances) + " games, infimum " + format_value(report.worst.ratio) + " (" +
                  std::to_string(to_double(report.worst.ratio)) + "), " + std::to_string(report.violations) +
                  " violations";
  result.evidence = family_to_json(report, false);
  return result;
}

SuiteResult v2_family_suite(const SuiteOptions& o) {
  FamilySpec family;
  family.kind = FamilySpec::Kind::Grid;
  family.min = 1;
  family.max = Value(5) / 2;
  family.step = o.grid_step;
  family.sizes.clear();
  for (int n = 2; n <= (o.n != 0 ? o.n : 3); ++n) family.sizes.push_back(n);
  const Value slack = Value(1) / 1'000'000;
  family.bound = [slack](const CharacteristicFunction& g) { return v2_bound(g.min(), g.max(), slack); };
  return {"thm4.11", {family_property(o, "amc-h (threshold h) on gridded V2 stays above the V2 bound", family)}};
}

SuiteResult v3_family_suite(const SuiteOptions& o) {
  SuiteResult s{"thm4.12"};
  FamilySpec family;
  family.kind = FamilySpec::Kind::Grid;
  family.min = 1;
  family.max = 5;
  family.step = o.grid_step;
  family.sizes = {o.n != 0 ? o.n : 3};
  family.bound = [](const CharacteristicFunction& g) { return v3_bound(g.min(), g.max()); };
  s.properties.push_back(family_property(o, "amc-h (threshold h) on gridded V>=3 stays above min{1/2, 3min/max}", family));

  InstanceParams params;
  params.eps = Value(1) / 10;
  const PaperInstance tight = paper_instance(PaperCase::AmcHTight, params);
  const RatioReport r = order_ratio(Policy(tight.game, PolicySpec::amc_h_threshold()), PlayerModel::Greedy, tight.order);
  PropertyResult t{"tight instance attains (6 + eps) / 12"};
  t.passed = r.ratio == (6 + params.eps) / 12;
  t.detail = "ratio " + format_value(r.ratio);
  t.evidence = ratio_to_json(r, PlayerNames(4, tight.aliases));
  s.properties.push_back(std::move(t));
  return s;
}

SuiteResult bank_suite(const SuiteOptions& o) {
  SuiteResult s{"thm5.3"};
  InstanceParams params;
  params.k = 2;
  params.max = 10;
  params.mu = 1;
  const PaperInstance inst = paper_instance(PaperCase::BankWorstCase, params);
  const PlayerNames names(inst.game.n(), inst.aliases);
  const Value eps = Value(1) / 100;
  const Policy greedy(inst.game, PolicySpec::bank_greedy(1));
  const Policy pessimistic(inst.game, PolicySpec::bank_pessimistic(1, eps));
  const SimulationTrace tg = simulate(greedy, inst.order, PlayerModel::Greedy, TieBreak::EarliestCoalition);
  const SimulationTrace tp = simulate(pessimistic, inst.order, PlayerModel::Pessimistic, TieBreak::EarliestCoalition);
  PropertyResult same{"bank policies form the same structure on the worst-case instance"};
  same.passed = tg.final_structure.canonical() == tp.final_structure.canonical();
  same.evidence["greedy"] = structure_to_json(tg.final_structure, names);
  same.evidence["pessimistic"] = structure_to_json(tp.final_structure, names);
  s.properties.push_back(std::move(same));

  const Value floor = Value(2) / inst.game.n();
  for (const auto& [label, policy, model] :
       {std::tuple{"bank-greedy", &greedy, PlayerModel::Greedy},
        std::tuple{"bank-pessimistic", &pessimistic, PlayerModel::Pessimistic}}) {
    const RatioReport r = order_ratio(*policy, model, inst.order);
    PropertyResult p{std::string(label) + " ratio on the worst-case instance is at least 2/n"};
    p.passed = r.ratio >= floor;
    p.detail = "ratio " + format_value(r.ratio);
    p.evidence = ratio_to_json(r, names);
    s.properties.push_back(std::move(p));
  }

  PropertyResult random{"bank policies form the same structures on random games"};
  const std::size_t count = pick(o.trials, 500);
  const int n_max = o.n != 0 ? o.n : 6;
  std::mt19937_64 rng(o.seed);
  for (std::size_t i = 0; i < count && random.passed; ++i) {
    const CharacteristicFunction game = suite_game(o, i, n_max, Value(1), Value(10));
    std::vector<PlayerId> order(game.n());
    std::iota(order.begin(), order.end(), 0);
    for (int k = game.n() - 1; k > 0; --k) std::swap(order[k], order[rng() % static_cast<std::uint64_t>(k + 1)]);
    const Value game_eps = Value(1) / (game.n() * game.n() + 1);
    const SimulationTrace a =
        simulate(Policy(game, PolicySpec::bank_greedy(1)), ArrivalOrder(order), PlayerModel::Greedy,
                 TieBreak::EarliestCoalition);
    const SimulationTrace b = simulate(Policy(game, PolicySpec::bank_pessimistic(1, game_eps)),
                                       ArrivalOrder(order), PlayerModel::Pessimistic, TieBreak::EarliestCoalition);
    if (!(a.final_structure.canonical() == b.final_structure.canonical())) {
      const PlayerNames gn(game.n());
      random.passed = false;
      random.detail = game_label(i, game);
      random.evidence["instance"] = instance_to_json(game, gn);
      random.evidence["greedy"] = trace_to_json(a, gn);
      random.evidence["pessimistic"] = trace_to_json(b, gn);
    }
  }
  if (random.passed) random.detail = std::to_string(count) + " games";
  s.properties.push_back(std::move(random));
  return s;
}

SuiteResult axiom_suite(const SuiteOptions& o) {
  const PolicySpec spec = o.policy.value_or(PolicySpec::amc());
  const std::size_t count = pick(o.games, 200);
  const std::size_t trials = pick(o.trials, 100);
  const int n_max = o.n != 0 ? o.n : 5;
  const bool tns_expected = spec.kind == PolicyKind::Amc || (spec.kind == PolicyKind::AmcH && !spec.h_from_threshold &&
                                                             spec.h == 0);
  struct Tally {
    Axiom axiom;
    bool required;
    PropertyResult result;
  };
  std::vector<Tally> tallies{
      {Axiom::NonWasteful, true, {"non-wasteful"}},
      {Axiom::Irrevocable, spec.irrevocable(), {"irrevocable"}},
      {Axiom::NonAnticipative, spec.kind != PolicyKind::OraclePair, {"non-anticipative"}},
      {Axiom::IndividuallyRational, spec.irrevocable(), {"individually-rational"}},
      {Axiom::TemporalNashStable, tns_expected, {"temporal-nash-stable"}},
  };
  std::size_t mutation_trials = 0;
  std::size_t no_room = 0;
  std::mt19937_64 rng(o.seed);
  for (std::size_t i = 0; i < count; ++i) {
    const Value& max = mixed_maxima()[i % mixed_maxima().size()];
    const CharacteristicFunction game = suite_game(o, i, n_max, Value(1), max);
    PolicySpec bound_spec = spec;
    if (bound_spec.kind == PolicyKind::BankPessimistic && bound_spec.eps * game.n() * game.n() >= 1)
      bound_spec.eps = Value(1) / (game.n() * game.n() + 1);
    std::vector<PlayerId> seq(game.n());
    std::iota(seq.begin(), seq.end(), 0);
    for (int k = game.n() - 1; k > 0; --k) std::swap(seq[k], seq[rng() % static_cast<std::uint64_t>(k + 1)]);
    const ArrivalOrder order(seq);
    const Policy policy(game, bound_spec);
    const PlayerModel model =
        spec.kind == PolicyKind::BankPessimistic ? PlayerModel::Pessimistic : PlayerModel::Greedy;
    const SimulationTrace trace = simulate(policy, order, model, TieBreak::NewFirst);
    for (auto& t : tallies) {
      if (!t.result.passed) continue;
      AxiomVerdict v{t.axiom};
      switch (t.axiom) {
        case Axiom::NonWasteful: v = check_non_wasteful(trace, game); break;
        case Axiom::Irrevocable: v = check_irrevocable(trace); break;
        case Axiom::NonAnticipative:
          v = check_non_anticipative(bound_spec, game, order, trials, o.seed * 7919 + i);
          mutation_trials += v.trials;
          if (!v.note.empty()) ++no_room;
          break;
        case Axiom::IndividuallyRational: v = check_ir(trace, game); break;
        case Axiom::TemporalNashStable: v = check_tns(trace, policy); break;
      }
      if (!v.holds) {
        const PlayerNames names(game.n());
        t.result.passed = false;
        t.result.detail = game_label(i, game);
        t.result.evidence["instance"] = instance_to_json(game, names);
        t.result.evidence["trace"] = trace_to_json(trace, names);
        t.result.evidence["verdict"] = verdict_to_json(v, names);
      }
    }
  }
  SuiteResult s{"axioms"};
  for (auto& t : tallies) {
    t.result.required = t.required;
    if (t.result.passed) t.result.detail = std::to_string(count) + " games";
    if (t.axiom == Axiom::NonAnticipative && t.result.passed) {
      t.result.detail += ", " + std::to_string(mutation_trials) + " mutation trials";
      if (no_room > 0) t.result.detail += ", NoValidMutation on " + std::to_string(no_room) + " games";
    }
    s.properties.push_back(std::move(t.result));
  }
  return s;
}

SuiteResult amc_block_suite(const SuiteOptions& o) {
  return {"lemma4.5", {block_sizes(o, "amc and optimal blocks have at most delta players", false)}};
}

SuiteResult amch_block_suite(const SuiteOptions& o) {
  return {"lemma4.10",
          {block_sizes(o, "amc-h blocks have at most ceil(delta min / (min + h)) players", true)}};
}

using SuiteFn = SuiteResult (*)(const SuiteOptions&);

const std::map<std::string, SuiteFn, std::less<>>& registry() {
  static const std::map<std::string, SuiteFn, std::less<>> suites{
      {"thm4.1", v1_ratio_suite},   {"thm4.2", oracle_suite},   {"lemma4.5", amc_block_suite}, {"lemma4.10", amch_block_suite},
      {"prop4.1", ir_suite}, {"prop4.2", amc_tns_suite}, {"prop4.9", amch_tns_suite},   {"thm4.11", v2_family_suite},
      {"thm4.12", v3_family_suite}, {"thm5.3", bank_suite},   {"axioms", axiom_suite},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"thm4.1",  "thm4.2",  "lemma4.5", "lemma4.10", "prop4.1", "prop4.2",
                                              "prop4.9", "thm4.11", "thm4.12",  "thm5.3",    "axioms"};
  return names;
}

SuiteResult run_suite(std::string_view name, const SuiteOptions& options) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw Error(ErrorKind::InvalidInput, "unknown suite '" + std::string(name) + "'");
  return it->second(options);
}

}  // namespace ocg
