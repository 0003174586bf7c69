#include "ocg/io.hpp"

#include "ocg/error.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace ocg {

namespace {

[[noreturn]] void bad_input(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

std::vector<std::string_view> split_csv(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    std::string_view item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) parts.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

Value value_field(const Json& doc, const char* key) {
  if (!doc.contains(key)) bad_input(std::string("missing field '") + key + "'");
  const Json& field = doc.at(key);
  if (field.is_string()) return parse_value(field.get<std::string>());
  if (field.is_number_integer()) return Value(field.get<long long>());
  bad_input(std::string("field '") + key + "' must be a rational string such as \"5/2\"");
}

Json values_json(const std::vector<Value>& values, const PlayerNames& names) {
  Json out = Json::object();
  for (std::size_t i = 0; i < values.size(); ++i) out[names.name(static_cast<PlayerId>(i))] = format_value(values[i]);
  return out;
}

}  // namespace

PlayerNames::PlayerNames(int n, std::vector<std::string> aliases) : n_(n), aliases_(std::move(aliases)) {
  if (!aliases_.empty() && static_cast<int>(aliases_.size()) != n) bad_input("alias list must name every player");
  for (int i = 0; i < n; ++i) display_.push_back(aliases_.empty() ? "a" + std::to_string(i) : aliases_[i]);
  for (int i = 0; i < n; ++i) {
    if (display_[i].empty() || display_[i].find(',') != std::string::npos) bad_input("invalid player alias");
    for (int j = 0; j < i; ++j)
      if (display_[i] == display_[j]) bad_input("duplicate player alias '" + display_[i] + "'");
  }
}

PlayerId PlayerNames::lookup(std::string_view name) const {
  for (int i = 0; i < n_; ++i)
    if (display_[i] == name) return i;
  if (name.size() >= 2 && name.front() == 'a') {
    int index = 0;
    for (char c : name.substr(1)) {
      if (c < '0' || c > '9') bad_input("unknown player '" + std::string(name) + "'");
      index = index * 10 + (c - '0');
      if (index >= n_) break;
    }
    if (index < n_) return index;
  }
  bad_input("unknown player '" + std::string(name) + "'");
}

Json PlayerNames::coalition(Coalition c) const {
  Json out = Json::array();
  for (PlayerId p : c.members()) out.push_back(display_[p]);
  return out;
}

ArrivalOrder PlayerNames::parse_order(std::string_view csv) const {
  std::vector<PlayerId> seq;
  for (auto item : split_csv(csv)) seq.push_back(lookup(item));
  return ArrivalOrder(std::move(seq));
}

Coalition PlayerNames::parse_coalition(std::string_view csv) const {
  Coalition c;
  for (auto item : split_csv(csv)) {
    const PlayerId p = lookup(item);
    if (c.contains(p)) bad_input("player listed twice in coalition '" + std::string(csv) + "'");
    c = c.with(p);
  }
  return c;
}

Json instance_to_json(const CharacteristicFunction& game, const PlayerNames& names) {
  Json doc;
  doc["n"] = game.n();
  doc["min"] = format_value(game.min());
  doc["max"] = format_value(game.max());
  if (!names.aliases().empty()) doc["aliases"] = names.aliases();
  Json values = Json::object();
  const std::uint32_t size = 1u << game.n();
  for (std::uint32_t s = 1; s < size; ++s) {
    std::string key;
    for (PlayerId p : Coalition(s).members()) key += (key.empty() ? "" : ",") + names.name(p);
    values[key] = format_value(game(Coalition(s)));
  }
  doc["values"] = std::move(values);
  return doc;
}

InstanceFile instance_from_json(const Json& doc, int max_players) {
  if (!doc.is_object()) bad_input("instance must be a JSON object");
  if (!doc.contains("n") || !doc.at("n").is_number_integer()) bad_input("field 'n' must be an integer");
  const int n = doc.at("n").get<int>();
  if (n < 1) bad_input("field 'n' must be at least 1");
  if (n > max_players) {
    throw GameValidationError({GameIssue{IssueKind::TooManyPlayers, {}, {}}},
                              "instance has " + std::to_string(n) + " players, limit is " +
                                  std::to_string(max_players));
  }
  std::vector<std::string> aliases;
  if (doc.contains("aliases")) {
    if (!doc.at("aliases").is_array()) bad_input("field 'aliases' must be a list of names");
    for (const auto& a : doc.at("aliases")) {
      if (!a.is_string()) bad_input("aliases must be strings");
      aliases.push_back(a.get<std::string>());
    }
  }
  PlayerNames names(n, std::move(aliases));
  const Value min = value_field(doc, "min");
  const Value max = value_field(doc, "max");
  if (!doc.contains("values") || !doc.at("values").is_object()) bad_input("field 'values' must be an object");

  const std::uint32_t size = 1u << n;
  std::vector<Value> table(size, Value(0));
  std::vector<bool> seen(size, false);
  for (const auto& [key, value] : doc.at("values").items()) {
    const Coalition c = names.parse_coalition(key);
    if (c.empty()) bad_input("the empty coalition is implicit (value 0)");
    if (seen[c.mask()]) bad_input("coalition '" + key + "' listed twice");
    seen[c.mask()] = true;
    if (value.is_string()) {
      table[c.mask()] = parse_value(value.get<std::string>());
    } else if (value.is_number_integer()) {
      table[c.mask()] = Value(value.get<long long>());
    } else {
      bad_input("value of '" + key + "' must be a rational string");
    }
  }
  for (std::uint32_t s = 1; s < size; ++s)
    if (!seen[s]) {
      std::string key;
      for (PlayerId p : Coalition(s).members()) key += (key.empty() ? "" : ",") + names.name(p);
      bad_input("missing value for coalition '" + key + "'");
    }
  ValidationResult result = validate_game(n, std::move(table), min, max, max_players);
  if (!result.ok()) {
    std::string what = "invalid game:";
    for (const auto& issue : result.issues) what += " " + issue.describe();
    throw GameValidationError(result.issues, what);
  }
  return {std::move(*result.game), std::move(names)};
}

InstanceFile read_instance(const std::string& path, int max_players) {
  const std::string text = read_text(path);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad_input("cannot parse " + path + ": " + e.what());
  }
  return instance_from_json(doc, max_players);
}

Json issues_to_json(const std::vector<GameIssue>& issues, const PlayerNames& names) {
  Json out = Json::array();
  for (const auto& issue : issues) {
    Json item;
    item["kind"] = to_string(issue.kind);
    if (issue.kind == IssueKind::NotMonotone) {
      item["subset"] = names.coalition(issue.subset);
      item["superset"] = names.coalition(issue.superset);
    } else if (issue.kind == IssueKind::OutOfBounds) {
      item["coalition"] = names.coalition(issue.subset);
    }
    out.push_back(std::move(item));
  }
  return out;
}

Json structure_to_json(const CoalitionStructure& s, const PlayerNames& names) {
  Json out = Json::array();
  for (Coalition c : s.blocks) out.push_back(names.coalition(c));
  return out;
}

Json ledger_to_json(const AllocationLedger& ledger, const PlayerNames& names) {
  Json out;
  out["firm"] = values_json(ledger.firm, names);
  out["provisional"] = values_json(ledger.provisional, names);
  Json banks = Json::array();
  for (const Value& b : ledger.bank) banks.push_back(format_value(b));
  out["bank"] = std::move(banks);
  return out;
}

Json trace_to_json(const SimulationTrace& trace, const PlayerNames& names) {
  Json out;
  Json order = Json::array();
  for (PlayerId p : trace.order.players()) order.push_back(names.name(p));
  out["order"] = std::move(order);
  Json steps = Json::array();
  for (const auto& step : trace.steps) {
    Json js;
    js["t"] = step.t;
    js["player"] = names.name(step.player);
    Json offers = Json::array();
    for (const auto& offer : step.offers) {
      Json jo;
      jo["target"] = names.coalition(offer.target);
      jo["total"] = format_value(offer.total);
      jo["firm"] = format_value(offer.firm);
      offers.push_back(std::move(jo));
    }
    js["offers"] = std::move(offers);
    js["chosen"] = names.coalition(step.chosen);
    js["structure"] = structure_to_json(step.structure, names);
    js["ledger"] = ledger_to_json(step.ledger, names);
    steps.push_back(std::move(js));
  }
  out["steps"] = std::move(steps);
  out["final_structure"] = structure_to_json(trace.final_structure, names);
  out["final_ledger"] = ledger_to_json(trace.final_ledger, names);
  out["welfare"] = format_value(trace.welfare);
  return out;
}

Json ratio_to_json(const RatioReport& report, const PlayerNames& names) {
  Json out;
  out["ratio"] = format_value(report.ratio);
  out["ratio_decimal"] = to_double(report.ratio);
  Json order = Json::array();
  for (PlayerId p : report.witness_order.players()) order.push_back(names.name(p));
  out["witness_order"] = std::move(order);
  out["witness_structure"] = structure_to_json(report.witness_structure, names);
  Json masks = Json::array();
  for (Coalition c : report.witness_structure.blocks) masks.push_back(c.mask());
  out["witness_masks"] = std::move(masks);
  out["greedy_welfare"] = format_value(report.greedy_welfare);
  out["optimal_welfare"] = format_value(report.optimal_welfare);
  out["optimal_structure"] = structure_to_json(report.optimal_structure, names);
  out["orders_examined"] = report.orders_examined;
  out["branches_examined"] = report.branches_examined;
  out["largest_greedy_block"] = report.largest_greedy_block;
  return out;
}

Json optimal_to_json(const OptimalResult& result, const PlayerNames& names) {
  Json out;
  out["best_welfare"] = format_value(result.best_welfare);
  out["structure"] = structure_to_json(result.structure, names);
  if (result.optimal_count) out["optimal_count"] = *result.optimal_count;
  return out;
}

Json verdict_to_json(const AxiomVerdict& verdict, const PlayerNames& names) {
  Json out;
  out["axiom"] = to_string(verdict.axiom);
  out["holds"] = verdict.holds;
  out["trials"] = verdict.trials;
  if (!verdict.note.empty()) out["note"] = verdict.note;
  if (verdict.counterexample) {
    const Counterexample& cx = *verdict.counterexample;
    Json jc;
    jc["step"] = cx.step;
    if (cx.player) jc["player"] = names.name(*cx.player);
    jc["coalition"] = names.coalition(cx.coalition);
    jc["observed"] = format_value(cx.observed);
    jc["reference"] = format_value(cx.reference);
    jc["description"] = cx.description;
    if (cx.mutated_game) jc["mutated_game"] = instance_to_json(*cx.mutated_game, names);
    out["counterexample"] = std::move(jc);
  }
  return out;
}

Json policy_to_json(const PolicySpec& spec) {
  Json out;
  out["kind"] = to_string(spec.kind);
  switch (spec.kind) {
    case PolicyKind::AmcH:
      out["h"] = spec.h_from_threshold ? std::string("paper") : format_value(spec.h);
      break;
    case PolicyKind::BankPessimistic:
      out["eps"] = format_value(spec.eps);
      [[fallthrough]];
    case PolicyKind::BankGreedy:
      out["mu"] = format_value(spec.mu);
      break;
    default: break;
  }
  return out;
}

std::string family_csv(const FamilyReport& report) {
  std::ostringstream out;
  out << "instance_hash,n,delta,ratio,bound,margin\n";
  for (const auto& row : report.rows) {
    out << row.instance_hash << ',' << row.n << ',' << row.delta << ',' << format_value(row.ratio) << ','
        << (row.bound ? format_value(*row.bound) : "") << ',' << (row.margin ? format_value(*row.margin) : "")
        << '\n';
  }
  return out.str();
}

Json family_to_json(const FamilyReport& report, bool include_rows) {
  Json out;
  out["instances"] = report.instances;
  out["infimum"] = format_value(report.worst.ratio);
  out["infimum_decimal"] = to_double(report.worst.ratio);
  out["violations"] = report.violations;
  out["total_runs"] = report.total_runs;
  if (report.worst_game) {
    const PlayerNames names(report.worst_game->n());
    out["worst_instance"] = instance_to_json(*report.worst_game, names);
    out["worst_report"] = ratio_to_json(report.worst, names);
  }
  if (include_rows) {
    Json rows = Json::array();
    for (const auto& row : report.rows) {
      Json jr;
      jr["instance_hash"] = row.instance_hash;
      jr["n"] = row.n;
      jr["delta"] = row.delta;
      jr["ratio"] = format_value(row.ratio);
      if (row.bound) jr["bound"] = format_value(*row.bound);
      if (row.margin) jr["margin"] = format_value(*row.margin);
      rows.push_back(std::move(jr));
    }
    out["rows"] = std::move(rows);
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) bad_input("cannot write " + path);
  file << text;
  if (!file) bad_input("cannot write " + path);
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) bad_input("cannot read " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

}  // namespace ocg
