#include "ocg/simulator.hpp"

#include "ocg/error.hpp"

#include <algorithm>

namespace ocg {

const char* to_string(PlayerModel model) { return model == PlayerModel::Greedy ? "greedy" : "pessimistic"; }

const char* to_string(TieBreak tie) {
  switch (tie) {
    case TieBreak::NewFirst: return "new-first";
    case TieBreak::EarliestCoalition: return "earliest";
    case TieBreak::Enumerate: return "enumerate";
  }
  return "unknown";
}

namespace {

std::vector<Offer> all_offers(const Policy& policy, const FormationState& state, PlayerId player) {
  std::vector<Offer> offers;
  offers.reserve(state.coalitions.size() + 1);
  offers.push_back(policy.offer(state, player, Coalition()));
  for (const auto& c : state.coalitions) offers.push_back(policy.offer(state, player, c.members));
  return offers;
}

const Value& evaluated(const Offer& o, PlayerModel model) { return model == PlayerModel::Greedy ? o.total : o.firm; }

/// Indices of maximal offers in the preference order of the tie rule.
std::vector<std::size_t> maximal_options(const std::vector<Offer>& offers, PlayerModel model, TieBreak tie) {
  const Value* best = &evaluated(offers[0], model);
  for (const auto& o : offers)
    if (evaluated(o, model) > *best) best = &evaluated(o, model);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < offers.size(); ++k)
    if (evaluated(offers[k], model) == *best) out.push_back(k);
  if (tie == TieBreak::EarliestCoalition && out.front() == 0) std::rotate(out.begin(), out.begin() + 1, out.end());
  return out;
}

class Explorer {
 public:
  Explorer(const Policy& policy, const ArrivalOrder& order, PlayerModel model, TieBreak tie, bool record,
           std::size_t cap)
      : policy_(policy), order_(order), model_(model), tie_(tie), record_(record), cap_(cap) {}

  void run() {
    FormationState state(policy_.game().n());
    std::vector<SimulationStep> steps;
    descend(std::move(state), std::move(steps), 0);
  }

  std::vector<SimulationTrace> traces;
  BranchOutcomes outcomes;

 private:
  void descend(FormationState state, std::vector<SimulationStep> steps, int t) {
    const int n = order_.size();
    for (; t < n; ++t) {
      const PlayerId player = order_.at(t);
      std::vector<Offer> offers = all_offers(policy_, state, player);
      std::vector<std::size_t> options = maximal_options(offers, model_, tie_);
      if (tie_ == TieBreak::Enumerate && options.size() > 1) {
        // Preferred option first, so the NewFirst run completes first.
        for (std::size_t b = 0; b + 1 < options.size(); ++b) {
          FormationState fork = state;
          std::vector<SimulationStep> fork_steps = steps;
          join(fork, fork_steps, t, player, offers, offers[options[b]].target);
          descend(std::move(fork), std::move(fork_steps), t + 1);
        }
        join(state, steps, t, player, offers, offers[options.back()].target);
        descend(std::move(state), std::move(steps), t + 1);
        return;
      }
      join(state, steps, t, player, offers, offers[options.front()].target);
    }
    finish(std::move(state), std::move(steps));
  }

  void join(FormationState& state, std::vector<SimulationStep>& steps, int t, PlayerId player,
            std::vector<Offer>& offers, Coalition target) {
    policy_.apply_join(state, player, target);
    if (record_)
      steps.push_back({t + 1, player, offers, target, state.structure(), state.ledger});
  }

  void finish(FormationState state, std::vector<SimulationStep> steps) {
    if (++outcomes.runs > cap_)
      throw Error(ErrorKind::BranchExplosion, "tie enumeration exceeded " + std::to_string(cap_) + " branches");
    CoalitionStructure canon = state.structure().canonical();
    if (std::find(outcomes.structures.begin(), outcomes.structures.end(), canon) != outcomes.structures.end())
      return;
    outcomes.structures.push_back(std::move(canon));
    if (!record_) return;
    policy_.settle(state);
    SimulationTrace trace;
    trace.order = order_;
    trace.steps = std::move(steps);
    trace.final_structure = state.structure();
    trace.final_ledger = std::move(state.ledger);
    trace.welfare = social_welfare(trace.final_structure, policy_.game());
    traces.push_back(std::move(trace));
  }

  const Policy& policy_;
  const ArrivalOrder& order_;
  PlayerModel model_;
  TieBreak tie_;
  bool record_;
  std::size_t cap_;
};

void check_order(const Policy& policy, const ArrivalOrder& order) {
  if (order.size() != policy.game().n())
    throw Error(ErrorKind::InvalidOrder, "arrival order length does not match the player count");
}

}  // namespace

SimulationTrace simulate(const Policy& policy, const ArrivalOrder& order, PlayerModel model, TieBreak tie) {
  if (tie == TieBreak::Enumerate)
    throw Error(ErrorKind::InvalidInput, "simulate needs a deterministic tie rule; use simulate_all_branches");
  check_order(policy, order);
  Explorer ex(policy, order, model, tie, true, 1);
  ex.run();
  return std::move(ex.traces.front());
}

SimulationTrace simulate(const CharacteristicFunction& game, const ArrivalOrder& order, const PolicySpec& spec,
                         PlayerModel model, TieBreak tie) {
  return simulate(Policy(game, spec), order, model, tie);
}

std::vector<SimulationTrace> simulate_all_branches(const Policy& policy, const ArrivalOrder& order,
                                                   PlayerModel model, std::size_t cap) {
  check_order(policy, order);
  Explorer ex(policy, order, model, TieBreak::Enumerate, true, cap);
  ex.run();
  return std::move(ex.traces);
}

BranchOutcomes explore_outcomes(const Policy& policy, const ArrivalOrder& order, PlayerModel model, TieBreak tie,
                                std::size_t cap) {
  check_order(policy, order);
  Explorer ex(policy, order, model, tie, false, cap);
  ex.run();
  return std::move(ex.outcomes);
}

std::vector<Value> hypothetical_allocation(const Policy& policy, Coalition coalition, const ArrivalOrder& order) {
  FormationState state(policy.game().n());
  for (PlayerId p : sub_order(order, coalition).players)
    policy.apply_join(state, p, state.coalitions.empty() ? Coalition() : state.coalitions.front().members);
  policy.settle(state);
  return state.ledger.firm;
}

}  // namespace ocg
