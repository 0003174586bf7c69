#include "ocg/policy.hpp"

#include "ocg/error.hpp"
#include "ocg/optimal.hpp"

#include <algorithm>

namespace ocg {

const char* to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Amc: return "amc";
    case PolicyKind::AmcH: return "amc-h";
    case PolicyKind::OraclePair: return "oracle-pair";
    case PolicyKind::BankGreedy: return "bank-greedy";
    case PolicyKind::BankPessimistic: return "bank-pessimistic";
  }
  return "unknown";
}

PolicyKind parse_policy_kind(std::string_view name) {
  for (PolicyKind k : {PolicyKind::Amc, PolicyKind::AmcH, PolicyKind::OraclePair, PolicyKind::BankGreedy,
                       PolicyKind::BankPessimistic})
    if (name == to_string(k)) return k;
  throw Error(ErrorKind::InvalidPolicy, "unknown policy kind '" + std::string(name) + "'");
}

FormationState::FormationState(int n) {
  ledger.firm.assign(n, Value(0));
  ledger.provisional.assign(n, Value(0));
}

CoalitionStructure FormationState::structure() const {
  CoalitionStructure out;
  out.blocks.reserve(coalitions.size());
  for (const auto& c : coalitions) out.blocks.push_back(c.members);
  return out;
}

std::optional<std::size_t> FormationState::find(Coalition target) const {
  for (std::size_t k = 0; k < coalitions.size(); ++k)
    if (coalitions[k].members == target) return k;
  return std::nullopt;
}

Value marginal_contribution(const CharacteristicFunction& game, Coalition members_before, PlayerId i) {
  if (members_before.contains(i))
    throw Error(ErrorKind::PlayerAlreadyMember, "player a" + std::to_string(i) + " is already a member");
  return game(members_before.with(i)) - game(members_before);
}

Policy::Policy(const CharacteristicFunction& game, PolicySpec spec) : game_(game), spec_(std::move(spec)) {
  switch (spec_.kind) {
    case PolicyKind::AmcH:
      if (spec_.h_from_threshold) spec_.h = paper_threshold(game_);
      if (spec_.h < 0) throw Error(ErrorKind::InvalidPolicy, "amc-h requires h >= 0");
      break;
    case PolicyKind::OraclePair:
      target_ = spec_.target ? *spec_.target : optimal_partition(game_).structure;
      if (target_.support() != game_.players())
        throw Error(ErrorKind::InvalidPolicy, "oracle-pair target must partition every player");
      break;
    case PolicyKind::BankPessimistic: {
      const Value n2(game_.n() * game_.n());
      if (spec_.eps <= 0 || spec_.eps * n2 >= 1)
        throw Error(ErrorKind::InvalidPolicy, "bank-pessimistic requires 0 < eps < 1/n^2");
      [[fallthrough]];
    }
    case PolicyKind::BankGreedy:
      if (spec_.mu <= 0 || spec_.mu > 1) throw Error(ErrorKind::InvalidPolicy, "bank policies require mu in (0,1]");
      break;
    case PolicyKind::Amc:
      break;
  }
}

bool Policy::below_threshold(const Value& coalition_value) const { return coalition_value < spec_.mu * game_.max(); }

bool Policy::in_target(Coalition c) const {
  return std::find(target_.blocks.begin(), target_.blocks.end(), c) != target_.blocks.end();
}

Offer Policy::offer(const FormationState& state, PlayerId i, Coalition target) const {
  if (state.arrived.contains(i))
    throw Error(ErrorKind::PlayerAlreadyMember, "player a" + std::to_string(i) + " has already arrived");
  std::optional<std::size_t> index;
  if (!target.empty()) {
    index = state.find(target);
    if (!index) throw Error(ErrorKind::UnknownCoalition, "target is not a coalition of the current structure");
  }
  const Value mc = marginal_contribution(game_, target, i);
  Offer out{target, Value(0), Value(0)};
  switch (spec_.kind) {
    case PolicyKind::Amc:
      out.total = mc;
      break;
    case PolicyKind::AmcH:
      if (target.empty())
        out.total = mc;
      else if (mc > spec_.h)
        out.total = mc - spec_.h;
      break;
    case PolicyKind::OraclePair:
      if (target.empty() || in_target(target.with(i))) out.total = mc;
      break;
    case PolicyKind::BankGreedy:
      if (below_threshold(game_(target))) out.total = game_(target.with(i));
      break;
    case PolicyKind::BankPessimistic:
      if (below_threshold(game_(target))) {
        Value paid(0);
        for (PlayerId p : target.members()) paid += state.ledger.firm[p];
        out.firm = spec_.eps * (target.size() + 1) * game_.min();
        out.total = game_(target.with(i)) - paid;
      }
      break;
  }
  if (spec_.irrevocable()) out.firm = out.total;
  return out;
}

void Policy::apply_join(FormationState& state, PlayerId i, Coalition target) const {
  if (state.arrived.contains(i))
    throw Error(ErrorKind::PlayerAlreadyMember, "player a" + std::to_string(i) + " has already arrived");
  auto& led = state.ledger;
  std::size_t k;
  if (target.empty()) {
    k = state.coalitions.size();
    state.coalitions.push_back({Coalition(), {}});
    led.bank.emplace_back(0);
  } else {
    auto found = state.find(target);
    if (!found) throw Error(ErrorKind::UnknownCoalition, "target is not a coalition of the current structure");
    k = *found;
  }
  FormingCoalition& c = state.coalitions[k];
  const Value mc = marginal_contribution(game_, target, i);
  const bool founder = target.empty();

  switch (spec_.kind) {
    case PolicyKind::Amc:
      led.firm[i] += mc;
      break;
    case PolicyKind::AmcH:
      // The founder is her own predecessor: she keeps v({i}).
      if (founder)
        led.firm[i] += mc;
      else if (mc <= spec_.h)
        led.firm[c.last_joiner()] += mc;
      else {
        led.firm[c.last_joiner()] += spec_.h;
        led.firm[i] += mc - spec_.h;
      }
      break;
    case PolicyKind::OraclePair:
      if (founder || in_target(target.with(i)))
        led.firm[i] += mc;
      else
        led.firm[c.last_joiner()] += mc;
      break;
    case PolicyKind::BankGreedy:
    case PolicyKind::BankPessimistic:
      if (below_threshold(game_(target))) {
        const Value joined = game_(target.with(i));
        for (PlayerId p : c.arrivals) led.provisional[p] = 0;
        if (spec_.kind == PolicyKind::BankGreedy) {
          led.bank[k] = joined;
        } else {
          led.firm[i] += spec_.eps * (target.size() + 1) * game_.min();
          Value paid = led.firm[i];
          for (PlayerId p : c.arrivals) paid += led.firm[p];
          if (paid > joined) throw Error(ErrorKind::NegativeBank, "firm payments exceed the coalition value");
          led.bank[k] = joined - paid;
        }
        led.provisional[i] = led.bank[k];
      } else {
        led.firm[c.last_joiner()] += mc;
      }
      break;
  }
  c.members = c.members.with(i);
  c.arrivals.push_back(i);
  state.arrived = state.arrived.with(i);
}

void Policy::settle(FormationState& state) const {
  auto& led = state.ledger;
  for (std::size_t k = 0; k < state.coalitions.size(); ++k) {
    for (PlayerId p : state.coalitions[k].arrivals) {
      led.firm[p] += led.provisional[p];
      led.provisional[p] = 0;
    }
    led.bank[k] = 0;
  }
}

Value paper_threshold(const Value& min, const Value& max) {
  const int delta = delta_class(min, max);
  if (delta <= 1) return Value(0);
  if (delta == 2) {
    const Value root = sqrt_lower(min * (min + 4 * max), Value(1) / Value(1'000'000'000));
    const Value h = root - 3 * min;
    return h < 0 ? Value(0) : h;
  }
  if (delta == 3) return min;
  return 2 * min;
}

}  // namespace ocg
