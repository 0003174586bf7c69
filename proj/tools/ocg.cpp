// ocg: simulate, evaluate and verify online coalition formation games.

#include "ocg/error.hpp"
#include "ocg/instances.hpp"
#include "ocg/io.hpp"
#include "ocg/optimal.hpp"
#include "ocg/suites.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <numeric>
#include <sstream>

using namespace ocg;

namespace {

enum Exit { kOk = 0, kPropertyFailure = 1, kInputError = 2, kResourceLimit = 3 };

struct PolicyFlags {
  std::string policy = "amc";
  std::string h = "0";
  std::string mu = "1";
  std::string eps = "1/100";
  std::string model = "greedy";

  void add(CLI::App* cmd) {
    cmd->add_option("--policy", policy, "amc | amc-h | oracle-pair | bank-greedy | bank-pessimistic")
        ->capture_default_str();
    cmd->add_option("--h", h, "AMC-h threshold: a rational or 'paper'")->capture_default_str();
    cmd->add_option("--mu", mu, "bank threshold factor in (0, 1]")->capture_default_str();
    cmd->add_option("--eps", eps, "bank-pessimistic firm rate, below 1/n^2")->capture_default_str();
    cmd->add_option("--model", model, "greedy | pessimistic")->capture_default_str();
  }

  PolicySpec spec() const {
    PolicySpec s;
    s.kind = parse_policy_kind(policy);
    if (h == "paper") {
      s.h_from_threshold = true;
    } else {
      s.h = parse_value(h);
    }
    s.mu = parse_value(mu);
    s.eps = parse_value(eps);
    return s;
  }

  PlayerModel player_model() const {
    if (model == "greedy") return PlayerModel::Greedy;
    if (model == "pessimistic") return PlayerModel::Pessimistic;
    throw Error(ErrorKind::InvalidInput, "unknown player model '" + model + "'");
  }
};

TieBreak parse_tie(const std::string& name) {
  if (name == "new-first") return TieBreak::NewFirst;
  if (name == "earliest") return TieBreak::EarliestCoalition;
  if (name == "enumerate") return TieBreak::Enumerate;
  throw Error(ErrorKind::InvalidInput, "unknown tie rule '" + name + "'");
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

/// The report goes to --out; a one-line summary goes to whichever stream
/// the report does not use.
void summary(const std::string& out, const std::string& line) {
  (out == "-" ? std::cerr : std::cout) << line << "\n";
}

std::string decimal(const Value& v) {
  std::ostringstream s;
  s.precision(10);
  s << to_double(v);
  return s.str();
}

std::vector<int> parse_sizes(const std::string& csv) {
  std::vector<int> sizes;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      sizes.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidInput, "player counts must be integers: '" + csv + "'");
    }
  }
  return sizes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simulator and verification lab for online cooperative games with coalition structures"};
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  unsigned jobs = 0;
  app.add_option("--jobs", jobs, "worker threads (0 = one per processor)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "run greedy players under a distribution policy");
  std::string sim_instance, sim_order, sim_ties = "new-first", sim_out = "-";
  bool sim_all_orders = false;
  int max_players = kDefaultMaxPlayers;
  PolicyFlags sim_policy;
  sim->add_option("--instance", sim_instance, "instance JSON file ('-' for stdin)")->required();
  auto* order_opt = sim->add_option("--order", sim_order, "comma-separated player names");
  sim->add_flag("--all-orders", sim_all_orders, "one summary per arrival order")->excludes(order_opt);
  sim->add_option("--ties", sim_ties, "new-first | earliest | enumerate")->capture_default_str();
  sim->add_option("--out", sim_out, "output file, '-' for stdout")->capture_default_str();
  sim->add_option("--max-players", max_players, "largest accepted instance")->capture_default_str();
  sim_policy.add(sim);

  // ratio
  auto* rat = app.add_subcommand("ratio", "worst-case competitive ratio of one instance or a family");
  std::string rat_instance, rat_mode = "all", rat_ties = "new-first", rat_out = "-", rat_order;
  std::string family_kind, family_sizes = "3", family_min = "1", family_max = "5", family_step, family_bound = "none";
  std::string format = "json";
  std::size_t samples = 1000, family_count = 100, branch_cap = kDefaultBranchCap;
  std::uint64_t rat_seed = 0;
  PolicyFlags rat_policy;
  auto* rat_instance_opt = rat->add_option("--instance", rat_instance, "instance JSON file");
  rat->add_option("--mode", rat_mode, "all | all-fixed | sampled")->capture_default_str();
  rat->add_option("--ties", rat_ties, "tie rule for all-fixed mode")->capture_default_str();
  rat->add_option("--order", rat_order, "restrict to one arrival order (all tie branches)");
  rat->add_option("--samples", samples, "orders drawn in sampled mode")->capture_default_str();
  rat->add_option("--seed", rat_seed, "seed for sampled mode and random families")->capture_default_str();
  rat->add_option("--branch-cap", branch_cap, "complete runs allowed per order")->capture_default_str();
  rat->add_option("--out", rat_out, "output file, '-' for stdout")->capture_default_str();
  rat->add_option("--family", family_kind, "grid | random: evaluate a game family")
                         ->excludes(rat_instance_opt);
  rat->add_option("--n", family_sizes, "family player counts, comma-separated")->capture_default_str();
  rat->add_option("--min", family_min, "family min")->capture_default_str();
  rat->add_option("--max", family_max, "family max")->capture_default_str();
  rat->add_option("--grid-step", family_step, "family value step (grid default: (max-min)/4)");
  rat->add_option("--count", family_count, "random family size")->capture_default_str();
  rat->add_option("--bound", family_bound, "none | v2 | v3: bound certified per instance")->capture_default_str();
  rat->add_option("--format", format, "json | csv (family runs)")->capture_default_str();
  rat_policy.add(rat);

  // verify
  auto* ver = app.add_subcommand("verify", "run an invariant suite");
  std::string suite, ver_step, ver_out = "-";
  SuiteOptions suite_opts;
  PolicyFlags ver_policy;
  std::string suite_help = "suite name:";
  for (const auto& s : suite_names()) suite_help += " " + s;
  ver->add_option("--suite", suite, suite_help)->required();
  ver->add_option("--n", suite_opts.n, "largest player count");
  ver->add_option("--trials", suite_opts.trials, "random games (axioms: mutation trials per prefix)");
  ver->add_option("--games", suite_opts.games, "axioms: number of random games");
  ver->add_option("--seed", suite_opts.seed, "seed")->capture_default_str();
  ver->add_option("--grid-step", ver_step, "value lattice step");
  ver->add_option("--out", ver_out, "output file, '-' for stdout")->capture_default_str();
  ver_policy.add(ver);
  ver->get_option("--h")->description("AMC-h threshold (rational or 'paper'); also the stability-suite witness h");

  // optimal
  auto* opt = app.add_subcommand("optimal", "welfare-maximizing coalition structure");
  std::string opt_instance, method = "dp", opt_out = "-";
  bool list_all = false;
  opt->add_option("--instance", opt_instance, "instance JSON file")->required();
  opt->add_option("--method", method, "dp | brute | both")->capture_default_str();
  opt->add_flag("--all", list_all, "list every optimal partition (brute force)");
  opt->add_option("--out", opt_out, "output file, '-' for stdout")->capture_default_str();
  opt->add_option("--max-players", max_players, "largest accepted instance")->capture_default_str();

  // paper
  auto* pap = app.add_subcommand("paper", "write one of the reference constructions");
  std::string pcase, p_min = "1", p_max, p_mu = "1", p_eps = "1/100", p_h = "1", p_out = "-";
  std::string p_branch = "a";
  InstanceParams params;
  std::string case_help = "thm-irrv3 | ex-amc-chain | thm-amchlb3-tight | prop-htns-witness | thm-nirrirub | "
                          "thm-nirrub-family | thm-nirrlb-worst";
  pap->add_option("--case", pcase, case_help)->required();
  pap->add_option("--min", p_min)->capture_default_str();
  pap->add_option("--max", p_max, "default depends on the case");
  pap->add_option("--delta", params.delta)->capture_default_str();
  pap->add_option("--m", params.m)->capture_default_str();
  pap->add_option("--k", params.k)->capture_default_str();
  pap->add_option("--mu", p_mu)->capture_default_str();
  pap->add_option("--eps", p_eps)->capture_default_str();
  pap->add_option("--h", p_h)->capture_default_str();
  pap->add_option("--branch", p_branch, "thm-nirrub-family adversary branch: a | b")->capture_default_str();
  pap->add_option("--out", p_out, "output file, '-' for stdout")->capture_default_str();

  // generate
  auto* gen = app.add_subcommand("generate", "random monotone instance");
  int g_n = 3;
  std::string g_min = "1", g_max = "5", g_step, g_out = "-";
  std::uint64_t g_seed = 0;
  gen->add_option("--n", g_n)->capture_default_str();
  gen->add_option("--min", g_min)->capture_default_str();
  gen->add_option("--max", g_max)->capture_default_str();
  gen->add_option("--seed", g_seed)->capture_default_str();
  gen->add_option("--grid-step", g_step, "values on min + k step");
  gen->add_option("--out", g_out, "output file, '-' for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  PlayerNames names;
  try {
    if (*sim) {
      InstanceFile inst = read_instance(sim_instance, max_players);
      names = inst.names;
      const Policy policy(inst.game, sim_policy.spec());
      const PlayerModel model = sim_policy.player_model();
      const TieBreak tie = parse_tie(sim_ties);
      const int n = inst.game.n();
      if (sim_all_orders) {
        Json rows = Json::array();
        std::vector<PlayerId> seq(n);
        std::iota(seq.begin(), seq.end(), 0);
        do {
          const ArrivalOrder order(seq);
          Json row;
          Json jo = Json::array();
          for (PlayerId p : seq) jo.push_back(names.name(p));
          row["order"] = std::move(jo);
          if (tie == TieBreak::Enumerate) {
            Json outcomes = Json::array();
            for (const auto& s : explore_outcomes(policy, order, model, tie).structures) {
              Json o;
              o["structure"] = structure_to_json(s, names);
              o["welfare"] = format_value(social_welfare(s, inst.game));
              outcomes.push_back(std::move(o));
            }
            row["outcomes"] = std::move(outcomes);
          } else {
            const SimulationTrace t = simulate(policy, order, model, tie);
            row["structure"] = structure_to_json(t.final_structure, names);
            row["welfare"] = format_value(t.welfare);
          }
          rows.push_back(std::move(row));
        } while (std::next_permutation(seq.begin(), seq.end()));
        Json doc;
        doc["policy"] = policy_to_json(policy.spec());
        doc["orders"] = std::move(rows);
        write_text(sim_out, dump(doc));
        return kOk;
      }
      const ArrivalOrder order = sim_order.empty() ? ArrivalOrder::identity(n) : names.parse_order(sim_order);
      if (tie == TieBreak::Enumerate) {
        Json doc;
        doc["policy"] = policy_to_json(policy.spec());
        Json branches = Json::array();
        for (const auto& t : simulate_all_branches(policy, order, model)) branches.push_back(trace_to_json(t, names));
        doc["branches"] = std::move(branches);
        write_text(sim_out, dump(doc));
        return kOk;
      }
      const SimulationTrace trace = simulate(policy, order, model, tie);
      Json doc = trace_to_json(trace, names);
      doc["policy"] = policy_to_json(policy.spec());
      write_text(sim_out, dump(doc));
      summary(sim_out, "welfare " + format_value(trace.welfare));
      return kOk;
    }

    if (*rat) {
      RatioOptions options;
      options.jobs = jobs;
      options.seed = rat_seed;
      options.samples = samples;
      options.branch_cap = branch_cap;
      options.fixed_tie = parse_tie(rat_ties);
      if (rat_mode == "all") {
        options.mode = RatioMode::AllOrdersAllTies;
      } else if (rat_mode == "all-fixed") {
        options.mode = RatioMode::AllOrdersFixedTie;
      } else if (rat_mode == "sampled") {
        options.mode = RatioMode::Sampled;
      } else {
        throw Error(ErrorKind::InvalidInput, "unknown ratio mode '" + rat_mode + "'");
      }
      const PolicySpec spec = rat_policy.spec();
      const PlayerModel model = rat_policy.player_model();

      if (!family_kind.empty()) {
        FamilySpec family;
        family.sizes = parse_sizes(family_sizes);
        family.min = parse_value(family_min);
        family.max = parse_value(family_max);
        if (!family_step.empty()) family.step = parse_value(family_step);
        family.count = family_count;
        family.seed = rat_seed;
        if (family_kind == "grid") {
          family.kind = FamilySpec::Kind::Grid;
        } else if (family_kind == "random") {
          family.kind = FamilySpec::Kind::Random;
        } else {
          throw Error(ErrorKind::InvalidInput, "unknown family '" + family_kind + "'");
        }
        if (family_bound == "v2") {
          family.bound = [](const CharacteristicFunction& g) {
            return v2_bound(g.min(), g.max(), Value(1) / 1'000'000);
          };
        } else if (family_bound == "v3") {
          family.bound = [](const CharacteristicFunction& g) { return v3_bound(g.min(), g.max()); };
        } else if (family_bound != "none") {
          throw Error(ErrorKind::InvalidInput, "unknown bound '" + family_bound + "'");
        }
        const FamilyReport report = family_ratio(spec, model, family, options);
        if (format == "csv") {
          write_text(rat_out, family_csv(report));
        } else if (format == "json") {
          Json doc = family_to_json(report, true);
          doc["policy"] = policy_to_json(spec);
          write_text(rat_out, dump(doc));
        } else {
          throw Error(ErrorKind::InvalidInput, "unknown format '" + format + "'");
        }
        summary(rat_out, "infimum " + format_value(report.worst.ratio) + " (" + decimal(report.worst.ratio) +
                             ") over " + std::to_string(report.instances) + " games, " +
                             std::to_string(report.violations) + " violations");
        return report.violations == 0 ? kOk : kPropertyFailure;
      }

      if (rat_instance.empty()) throw Error(ErrorKind::InvalidInput, "ratio needs --instance or --family");
      InstanceFile inst = read_instance(rat_instance, kMaxTablePlayers);
      names = inst.names;
      const Policy policy(inst.game, spec);
      const RatioReport report = rat_order.empty()
                                     ? competitive_ratio(policy, model, options)
                                     : order_ratio(policy, model, names.parse_order(rat_order),
                                                   TieBreak::Enumerate, branch_cap);
      Json doc = ratio_to_json(report, names);
      doc["policy"] = policy_to_json(policy.spec());
      doc["mode"] = rat_order.empty() ? to_string(options.mode) : "single-order-all-ties";
      write_text(rat_out, dump(doc));
      summary(rat_out, "ratio " + format_value(report.ratio) + " (" + decimal(report.ratio) + ")");
      return kOk;
    }

    if (*ver) {
      suite_opts.jobs = jobs;
      if (!ver_step.empty()) suite_opts.grid_step = parse_value(ver_step);
      if (ver->count("--h") > 0 && ver_policy.h != "paper") suite_opts.h = parse_value(ver_policy.h);
      if (ver->count("--policy") > 0 || ver->count("--h") > 0) suite_opts.policy = ver_policy.spec();
      const SuiteResult result = run_suite(suite, suite_opts);
      write_text(ver_out, dump(result.to_json()));
      for (const auto& p : result.properties)
        summary(ver_out, std::string(p.passed ? "PASS" : (p.required ? "FAIL" : "INFO")) + "  " + p.name +
                             (p.detail.empty() ? "" : "  [" + p.detail + "]"));
      summary(ver_out, std::string(result.passed() ? "PASS " : "FAIL ") + result.suite);
      return result.passed() ? kOk : kPropertyFailure;
    }

    if (*opt) {
      InstanceFile inst = read_instance(opt_instance, max_players);
      names = inst.names;
      Json doc;
      if (method == "dp" || method == "both") doc["dp"] = optimal_to_json(optimal_partition(inst.game), names);
      if (method == "brute" || method == "both")
        doc["brute_force"] = optimal_to_json(brute_force_partition(inst.game), names);
      if (!doc.contains("dp") && !doc.contains("brute_force"))
        throw Error(ErrorKind::InvalidInput, "unknown method '" + method + "'");
      if (list_all) {
        Json all = Json::array();
        for (const auto& s : all_optimal_partitions(inst.game)) all.push_back(structure_to_json(s, names));
        doc["all_optimal"] = std::move(all);
      }
      if (method == "both") {
        const bool agree = doc["dp"]["best_welfare"] == doc["brute_force"]["best_welfare"];
        doc["agree"] = agree;
        write_text(opt_out, dump(doc));
        return agree ? kOk : kPropertyFailure;
      }
      write_text(opt_out, dump(doc));
      return kOk;
    }

    if (*pap) {
      params.min = parse_value(p_min);
      if (!p_max.empty()) params.max = parse_value(p_max);
      params.mu = parse_value(p_mu);
      params.eps = parse_value(p_eps);
      params.h = parse_value(p_h);
      if (p_branch.size() != 1) throw Error(ErrorKind::BadParams, "--branch must be 'a' or 'b'");
      params.branch = p_branch[0];
      const PaperInstance inst = paper_instance(parse_paper_case(pcase), params);
      names = PlayerNames(inst.game.n(), inst.aliases);
      Json doc = instance_to_json(inst.game, names);
      Json order = Json::array();
      for (PlayerId p : inst.order.players()) order.push_back(names.name(p));
      doc["suggested_order"] = std::move(order);
      doc["case"] = pcase;
      write_text(p_out, dump(doc));
      return kOk;
    }

    if (*gen) {
      std::optional<Value> step;
      if (!g_step.empty()) step = parse_value(g_step);
      const CharacteristicFunction game = random_instance(g_n, parse_value(g_min), parse_value(g_max), g_seed, step);
      write_text(g_out, dump(instance_to_json(game, PlayerNames(g_n))));
      return kOk;
    }
  } catch (const GameValidationError& e) {
    Json diag;
    diag["error"] = to_string(e.kind());
    diag["message"] = e.what();
    diag["issues"] = issues_to_json(e.issues(), names.n() > 0 ? names : PlayerNames(kMaxTablePlayers));
    std::cerr << diag.dump() << "\n";
    return kInputError;
  } catch (const Error& e) {
    Json diag;
    diag["error"] = to_string(e.kind());
    diag["message"] = e.what();
    std::cerr << diag.dump() << "\n";
    return e.is_resource_limit() ? kResourceLimit : kInputError;
  }
  return kOk;
}
