//===--- okb.hpp - The oKB inference system as a state machine ------------===//
//
// Part of the okb toolkit. Licensed under the Apache License v2.0.
// See LICENSE for license information.
//
//===----------------------------------------------------------------------===//
//
// States are pairs (E, R) of equations and rules. Each of the eight
// inference rules is validated against its side condition before it
// rewrites the state; a certificate replays as a left fold of such steps.
// Steps reference state elements modulo variant with the orientation kept
// fixed: simplify_left on s == t never silently matches t == s.
//
// In compose, simplify and collapse the rewritten fact is removed from the
// premise before the one-step condition is checked, so a fact never
// justifies its own rewriting (the split in the inference rules).
//
//===----------------------------------------------------------------------===//

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "okb/critical.hpp"
#include "okb/order.hpp"
#include "okb/rewrite.hpp"
#include "okb/subst.hpp"
#include "okb/term.hpp"

namespace okb {

struct ProverState {
  std::vector<Equation> equations;
  std::vector<Rule> rules;
};

struct DeduceStep {
  Term peak;
  Term left;
  Term right;
};
struct OrientLRStep {
  Equation equation;
};
struct OrientRLStep {
  Equation equation;
};
struct DeleteStep {
  Equation equation;
};
struct ComposeStep {
  Rule rule;
  Term result;
};
struct SimplifyLeftStep {
  Equation equation;
  Term result;
};
struct SimplifyRightStep {
  Equation equation;
  Term result;
};
struct CollapseStep {
  Rule rule;
  Term result;
};

using InferenceStep =
    std::variant<DeduceStep, OrientLRStep, OrientRLStep, DeleteStep,
                 ComposeStep, SimplifyLeftStep, SimplifyRightStep,
                 CollapseStep>;

inline const char* step_kind_name(const InferenceStep& step) {
  struct Visitor {
    const char* operator()(const DeduceStep&) { return "deduce"; }
    const char* operator()(const OrientLRStep&) { return "orient_lr"; }
    const char* operator()(const OrientRLStep&) { return "orient_rl"; }
    const char* operator()(const DeleteStep&) { return "delete"; }
    const char* operator()(const ComposeStep&) { return "compose"; }
    const char* operator()(const SimplifyLeftStep&) { return "simplify_left"; }
    const char* operator()(const SimplifyRightStep&) {
      return "simplify_right";
    }
    const char* operator()(const CollapseStep&) { return "collapse"; }
  };
  return std::visit(Visitor{}, step);
}

/// A finite sequence of inferences starting from (initial, empty).
struct Run {
  std::vector<Equation> initial;
  std::vector<InferenceStep> steps;
};

struct StepOutcome {
  std::optional<ProverState> state;
  std::string error;

  bool ok() const { return state.has_value(); }
};

namespace detail {

inline std::optional<std::size_t> find_equation_variant(
    const std::vector<Equation>& eqs, const Equation& wanted) {
  for (std::size_t i = 0; i < eqs.size(); ++i)
    if (variant_of(eqs[i].lhs, eqs[i].rhs, wanted.lhs, wanted.rhs)) return i;
  return std::nullopt;
}

inline std::optional<std::size_t> find_rule_variant(
    const std::vector<Rule>& rules, const Rule& wanted) {
  for (std::size_t i = 0; i < rules.size(); ++i)
    if (variant_of(rules[i].lhs, rules[i].rhs, wanted.lhs, wanted.rhs))
      return i;
  return std::nullopt;
}

inline RewriteSystem system_of(const ProverState& state,
                               const ReductionOrderSpec& order) {
  return RewriteSystem{state.rules, state.equations, order};
}

}  // namespace detail

/// Applies one inference step, validating its side condition. Returns the
/// successor state or a violation message naming the failed condition.
inline StepOutcome apply_step(const ProverState& state,
                              const InferenceStep& step,
                              const ReductionOrderSpec& order) {
  struct Visitor {
    const ProverState& state;
    const ReductionOrderSpec& order;

    StepOutcome fail(const std::string& msg) const { return {std::nullopt, msg}; }

    StepOutcome operator()(const DeduceStep& s) const {
      RewriteSystem sys = detail::system_of(state, order);
      if (!plain_step_exists(sys, s.peak, s.left))
        return fail("deduce: peak " + to_string(s.peak) +
                    " does not rewrite to " + to_string(s.left) +
                    " in one R+E step");
      if (!plain_step_exists(sys, s.peak, s.right))
        return fail("deduce: peak " + to_string(s.peak) +
                    " does not rewrite to " + to_string(s.right) +
                    " in one R+E step");
      ProverState next = state;
      next.equations.push_back(Equation{s.left, s.right});
      return {next, ""};
    }

    StepOutcome operator()(const OrientLRStep& s) const {
      auto idx = detail::find_equation_variant(state.equations, s.equation);
      if (!idx)
        return fail("orient_lr: equation " + to_string(s.equation) +
                    " not in state (modulo variant)");
      OrderDiagnosis d = order_compare(order, s.equation.lhs, s.equation.rhs);
      if (d != OrderDiagnosis::Greater)
        return fail("orient_lr: left side of " + to_string(s.equation) +
                    " is not greater (order returned " + to_string(d) + ")");
      ProverState next = state;
      next.equations.erase(next.equations.begin() + *idx);
      next.rules.push_back(Rule{s.equation.lhs, s.equation.rhs});
      return {next, ""};
    }

    StepOutcome operator()(const OrientRLStep& s) const {
      auto idx = detail::find_equation_variant(state.equations, s.equation);
      if (!idx)
        return fail("orient_rl: equation " + to_string(s.equation) +
                    " not in state (modulo variant)");
      OrderDiagnosis d = order_compare(order, s.equation.rhs, s.equation.lhs);
      if (d != OrderDiagnosis::Greater)
        return fail("orient_rl: right side of " + to_string(s.equation) +
                    " is not greater (order returned " + to_string(d) + ")");
      ProverState next = state;
      next.equations.erase(next.equations.begin() + *idx);
      next.rules.push_back(Rule{s.equation.rhs, s.equation.lhs});
      return {next, ""};
    }

    StepOutcome operator()(const DeleteStep& s) const {
      auto idx = detail::find_equation_variant(state.equations, s.equation);
      if (!idx)
        return fail("delete: equation " + to_string(s.equation) +
                    " not in state (modulo variant)");
      if (s.equation.lhs != s.equation.rhs)
        return fail("delete: sides of " + to_string(s.equation) +
                    " are not syntactically equal");
      ProverState next = state;
      next.equations.erase(next.equations.begin() + *idx);
      return {next, ""};
    }

    StepOutcome operator()(const ComposeStep& s) const {
      auto idx = detail::find_rule_variant(state.rules, s.rule);
      if (!idx)
        return fail("compose: rule " + to_string(s.rule) +
                    " not in state (modulo variant)");
      ProverState rest = state;
      rest.rules.erase(rest.rules.begin() + *idx);
      if (!ordered_step_exists(detail::system_of(rest, order), s.rule.rhs,
                               s.result))
        return fail("compose: no ordered step from " + to_string(s.rule.rhs) +
                    " to " + to_string(s.result));
      rest.rules.push_back(Rule{s.rule.lhs, s.result});
      return {rest, ""};
    }

    StepOutcome operator()(const SimplifyLeftStep& s) const {
      auto idx = detail::find_equation_variant(state.equations, s.equation);
      if (!idx)
        return fail("simplify_left: equation " + to_string(s.equation) +
                    " not in state (modulo variant)");
      ProverState rest = state;
      rest.equations.erase(rest.equations.begin() + *idx);
      if (!ordered_step_exists(detail::system_of(rest, order), s.equation.lhs,
                               s.result))
        return fail("simplify_left: no ordered step from " +
                    to_string(s.equation.lhs) + " to " + to_string(s.result));
      rest.equations.push_back(Equation{s.result, s.equation.rhs});
      return {rest, ""};
    }

    StepOutcome operator()(const SimplifyRightStep& s) const {
      auto idx = detail::find_equation_variant(state.equations, s.equation);
      if (!idx)
        return fail("simplify_right: equation " + to_string(s.equation) +
                    " not in state (modulo variant)");
      ProverState rest = state;
      rest.equations.erase(rest.equations.begin() + *idx);
      if (!ordered_step_exists(detail::system_of(rest, order), s.equation.rhs,
                               s.result))
        return fail("simplify_right: no ordered step from " +
                    to_string(s.equation.rhs) + " to " + to_string(s.result));
      rest.equations.push_back(Equation{s.equation.lhs, s.result});
      return {rest, ""};
    }

    StepOutcome operator()(const CollapseStep& s) const {
      auto idx = detail::find_rule_variant(state.rules, s.rule);
      if (!idx)
        return fail("collapse: rule " + to_string(s.rule) +
                    " not in state (modulo variant)");
      ProverState rest = state;
      rest.rules.erase(rest.rules.begin() + *idx);
      if (!ordered_step_exists(detail::system_of(rest, order), s.rule.lhs,
                               s.result))
        return fail("collapse: no ordered step from " + to_string(s.rule.lhs) +
                    " to " + to_string(s.result));
      rest.equations.push_back(Equation{s.result, s.rule.rhs});
      return {rest, ""};
    }
  };
  return std::visit(Visitor{state, order}, step);
}

struct ReplayOptions {
  bool record_trace = false;
  bool check_rule_invariant = true;
};

struct ReplayResult {
  bool ok = false;
  ProverState final_state;
  std::string error;
  std::size_t failed_step = 0;            // 1-based
  std::vector<ProverState> trace;         // states, initial first
};

/// Left fold of apply_step from (run.initial, empty). The rule invariant
/// (every rule greater than its right side) is asserted on every
/// intermediate state unless disabled.
inline ReplayResult replay(const Run& run, const ReductionOrderSpec& order,
                           const ReplayOptions& opts = {}) {
  ReplayResult result;
  ProverState state{run.initial, {}};
  if (opts.record_trace) result.trace.push_back(state);
  for (std::size_t i = 0; i < run.steps.size(); ++i) {
    StepOutcome out = apply_step(state, run.steps[i], order);
    if (!out.ok()) {
      result.error = "step " + std::to_string(i + 1) + " (" +
                     step_kind_name(run.steps[i]) + "): " + out.error;
      result.failed_step = i + 1;
      return result;
    }
    state = std::move(*out.state);
    if (opts.check_rule_invariant) {
      for (const Rule& r : state.rules)
        if (!order_greater(order, r.lhs, r.rhs)) {
          result.error = "step " + std::to_string(i + 1) +
                         ": rule invariant violated, " + to_string(r) +
                         " is not oriented";
          result.failed_step = i + 1;
          return result;
        }
    }
    if (opts.record_trace) result.trace.push_back(state);
  }
  result.ok = true;
  result.final_state = std::move(state);
  return result;
}

struct CompletionLimits {
  std::size_t max_steps = 400;
  Budget budget;
};

struct CompletionResult {
  bool success = false;
  ProverState state;
  Run run;
};

/// A fair naive completion loop: simplify both sides of every equation to
/// normal form, delete trivial equations, orient the comparable ones,
/// deduce every undischarged extended critical pair, and repeat until
/// nothing changes or the step budget runs out. Selection is first
/// applicable in list order, so generated runs are reproducible. The run
/// executed so far is returned even on failure.
inline CompletionResult complete(const std::vector<Equation>& e0,
                                 const ReductionOrderSpec& order,
                                 const CompletionLimits& limits = {}) {
  CompletionResult result;
  result.run.initial = e0;
  ProverState state{e0, {}};

  auto emit = [&](const InferenceStep& step) -> bool {
    if (result.run.steps.size() >= limits.max_steps) return false;
    StepOutcome out = apply_step(state, step, order);
    if (!out.ok()) return false;  // engine bug guard; treated as stuck
    state = std::move(*out.state);
    result.run.steps.push_back(step);
    return true;
  };

  bool out_of_budget = false;
  bool changed = true;
  while (changed && !out_of_budget) {
    changed = false;

    // Simplify both sides of every equation to ordered normal form.
    bool simplified = true;
    while (simplified && !out_of_budget) {
      simplified = false;
      for (std::size_t i = 0; i < state.equations.size(); ++i) {
        Equation eq = state.equations[i];
        RewriteSystem rest{state.rules, {}, order};
        rest.equations = state.equations;
        rest.equations.erase(rest.equations.begin() + i);
        std::vector<StepWitness> lsteps = ordered_successors(rest, eq.lhs);
        if (!lsteps.empty()) {
          if (!emit(SimplifyLeftStep{eq, lsteps.front().target}))
            out_of_budget = true;
          simplified = !out_of_budget;
          changed = changed || simplified;
          break;
        }
        std::vector<StepWitness> rsteps = ordered_successors(rest, eq.rhs);
        if (!rsteps.empty()) {
          if (!emit(SimplifyRightStep{eq, rsteps.front().target}))
            out_of_budget = true;
          simplified = !out_of_budget;
          changed = changed || simplified;
          break;
        }
      }
    }

    // Delete trivial equations.
    for (std::size_t i = 0; i < state.equations.size() && !out_of_budget;) {
      if (state.equations[i].lhs == state.equations[i].rhs) {
        if (!emit(DeleteStep{state.equations[i]})) {
          out_of_budget = true;
          break;
        }
        changed = true;
      } else {
        ++i;
      }
    }

    // Orient every comparable equation.
    for (std::size_t i = 0; i < state.equations.size() && !out_of_budget;) {
      Equation eq = state.equations[i];
      OrderDiagnosis d = order_compare(order, eq.lhs, eq.rhs);
      if (d == OrderDiagnosis::Greater) {
        if (!emit(OrientLRStep{eq})) out_of_budget = true;
        changed = true;
      } else if (d == OrderDiagnosis::Smaller) {
        if (!emit(OrientRLStep{eq})) out_of_budget = true;
        changed = true;
      } else {
        ++i;
      }
    }
    if (out_of_budget) break;

    // Deduce the extended critical pairs that are not yet discharged.
    std::vector<Equation> collection = symcl(state.equations);
    for (const Rule& r : state.rules)
      collection.push_back(Equation{r.lhs, r.rhs});
    std::vector<Equation> sc = symcl(state.equations);
    RewriteSystem sys = detail::system_of(state, order);
    for (const CriticalPair& cp :
         extended_critical_pairs(collection, order)) {
      if (is_instance_of(cp, sc)) continue;
      if (joinable(sys, cp.lhs, cp.rhs, limits.budget) == JoinResult::Joinable)
        continue;
      Equation candidate{cp.lhs, cp.rhs};
      bool present = false;
      for (const Equation& e : state.equations)
        if (variant_of(e.lhs, e.rhs, candidate.lhs, candidate.rhs) ||
            variant_of(e.rhs, e.lhs, candidate.lhs, candidate.rhs)) {
          present = true;
          break;
        }
      if (present) continue;
      Term peak = apply_subst(cp.overlap.outer.lhs, cp.overlap.mgu);
      if (!emit(DeduceStep{peak, cp.lhs, cp.rhs})) {
        out_of_budget = true;
        break;
      }
      changed = true;
    }
  }

  result.state = state;
  result.success = !out_of_budget;
  return result;
}

}  // namespace okb
