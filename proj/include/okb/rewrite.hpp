//===--- rewrite.hpp - Equations, rules, plain and ordered rewriting -----===//
//
// Part of the okb toolkit. Licensed under the Apache License v2.0.
// See LICENSE for license information.
//
//===----------------------------------------------------------------------===//
//
// Ordered rewriting uses S = R u (E+-)^>: rules apply unconditionally
// (checked states keep R inside the order), equation instances apply only
// when the instantiated left side is greater than the instantiated right
// side. Plain rewriting (the deduce side condition) applies rules
// left-to-right and equations in both orientations with no order check.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "okb/order.hpp"
#include "okb/subst.hpp"
#include "okb/term.hpp"

namespace okb {

/// An equation s == t. The pair is ordered: simplify_left and
/// simplify_right address the two sides by position.
struct Equation {
  Term lhs;
  Term rhs;

  friend bool operator==(const Equation& a, const Equation& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
  friend bool operator<(const Equation& a, const Equation& b) {
    return a.lhs != b.lhs ? a.lhs < b.lhs : a.rhs < b.rhs;
  }
};

/// A rewrite rule lhs -> rhs. In checked states lhs is greater than rhs
/// under the active order.
struct Rule {
  Term lhs;
  Term rhs;

  friend bool operator==(const Rule& a, const Rule& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
  friend bool operator<(const Rule& a, const Rule& b) {
    return a.lhs != b.lhs ? a.lhs < b.lhs : a.rhs < b.rhs;
  }
};

inline Equation reversed(const Equation& e) { return {e.rhs, e.lhs}; }

inline std::string to_string(const Equation& e) {
  return to_string(e.lhs) + " == " + to_string(e.rhs);
}

inline std::string to_string(const Rule& r) {
  return to_string(r.lhs) + " -> " + to_string(r.rhs);
}

/// Symmetric closure: E u { t == s | s == t in E }, syntactic duplicates
/// removed, input order preserved.
inline std::vector<Equation> symcl(const std::vector<Equation>& eqs) {
  std::vector<Equation> out;
  std::set<Equation> seen;
  for (const Equation& e : eqs)
    if (seen.insert(e).second) out.push_back(e);
  for (const Equation& e : eqs) {
    Equation rev = reversed(e);
    if (seen.insert(rev).second) out.push_back(rev);
  }
  return out;
}

/// Resource limits for closure computations. Exceeding a budget is a
/// rejection reason, never an acceptance.
struct Budget {
  std::size_t max_terms = 10000;
  std::size_t max_term_size = 200;
};

struct RewriteSystem {
  std::vector<Rule> rules;
  std::vector<Equation> equations;
  std::optional<ReductionOrderSpec> order;  // required when equations rewrite
};

/// Which stored fact, in which orientation, a step used.
struct StepOrigin {
  enum class Kind { Rule, EquationLR, EquationRL } kind = Kind::Rule;
  std::size_t index = 0;
};

inline std::string to_string(const StepOrigin& o) {
  switch (o.kind) {
    case StepOrigin::Kind::Rule:
      return "rule #" + std::to_string(o.index);
    case StepOrigin::Kind::EquationLR:
      return "equation #" + std::to_string(o.index) + " (left-to-right)";
    case StepOrigin::Kind::EquationRL:
      return "equation #" + std::to_string(o.index) + " (right-to-left)";
  }
  return "?";
}

/// One rewrite step with enough witness data to replay it.
struct StepWitness {
  Term source;
  Term target;
  Position position;
  StepOrigin origin;
  Substitution subst;
};

namespace detail {

struct OrientedCandidate {
  Term lhs;
  Term rhs;
  StepOrigin origin;
};

inline std::vector<OrientedCandidate> plain_candidates(
    const RewriteSystem& sys) {
  std::vector<OrientedCandidate> out;
  for (std::size_t i = 0; i < sys.rules.size(); ++i)
    out.push_back({sys.rules[i].lhs, sys.rules[i].rhs,
                   {StepOrigin::Kind::Rule, i}});
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    out.push_back({sys.equations[i].lhs, sys.equations[i].rhs,
                   {StepOrigin::Kind::EquationLR, i}});
    out.push_back({sys.equations[i].rhs, sys.equations[i].lhs,
                   {StepOrigin::Kind::EquationRL, i}});
  }
  return out;
}

// Variables of the applied side that the matching substitution leaves
// unbound (right-side-only variables of the originating fact).
inline std::vector<Variable> unbound_vars(const Term& rhs,
                                          const Substitution& sigma) {
  std::vector<Variable> out;
  for (const Variable& v : vars_of(rhs))
    if (!sigma.bound(v)) out.push_back(v);
  return out;
}

inline std::vector<Term> distinct_subterms(const Term& t) {
  std::vector<Term> out;
  std::set<Term> seen;
  for (const Position& p : positions(t)) {
    const Term& sub = subterm_at(t, p);
    if (seen.insert(sub).second) out.push_back(sub);
  }
  return out;
}

}  // namespace detail

/// All one-step plain rewrites of t: rules left-to-right and equations in
/// both orientations, at every position. Right-side-only variables of the
/// applied fact are instantiated with fresh variables; each witness gets
/// its own fresh names.
inline std::vector<StepWitness> plain_successors(const RewriteSystem& sys,
                                                 const Term& t) {
  std::vector<StepWitness> out;
  std::vector<detail::OrientedCandidate> cands = detail::plain_candidates(sys);
  std::set<Variable> used = vars_of(t);
  for (const Position& p : positions(t)) {
    const Term& sub = subterm_at(t, p);
    for (const detail::OrientedCandidate& c : cands) {
      std::optional<Substitution> sigma = match(c.lhs, sub);
      if (!sigma) continue;
      Substitution full = *sigma;
      for (const Variable& v : detail::unbound_vars(c.rhs, *sigma)) {
        Variable fresh{fresh_name(v.name, used)};
        used.insert(fresh);
        full.bind(v, Term::var(fresh.name));
      }
      out.push_back({t, replace_at(t, p, apply_subst(c.rhs, full)), p,
                     c.origin, full});
    }
  }
  return out;
}

/// All one-step ordered rewrites of t under S. Rules apply unconditionally;
/// equation instances require the instantiated left side to be greater.
/// Right-side-only variables of an equation are instantiated with subterms
/// of t (an instance only rewrites when it decreases, so candidates beyond
/// t's own material rarely help and would not terminate the enumeration).
inline std::vector<StepWitness> ordered_successors(const RewriteSystem& sys,
                                                   const Term& t) {
  std::vector<StepWitness> out;
  if (!sys.equations.empty() && !sys.order)
    throw config_error("ordered rewriting with equations requires an order");
  std::vector<Term> fillers = detail::distinct_subterms(t);
  std::set<std::pair<Term, Position>> seen;
  for (const Position& p : positions(t)) {
    const Term& sub = subterm_at(t, p);
    for (std::size_t i = 0; i < sys.rules.size(); ++i) {
      std::optional<Substitution> sigma = match(sys.rules[i].lhs, sub);
      if (!sigma) continue;
      Term target = replace_at(t, p, apply_subst(sys.rules[i].rhs, *sigma));
      if (seen.emplace(target, p).second)
        out.push_back({t, target, p, {StepOrigin::Kind::Rule, i}, *sigma});
    }
    for (std::size_t i = 0; i < sys.equations.size(); ++i) {
      for (int dir = 0; dir < 2; ++dir) {
        const Term& from = dir == 0 ? sys.equations[i].lhs : sys.equations[i].rhs;
        const Term& to = dir == 0 ? sys.equations[i].rhs : sys.equations[i].lhs;
        StepOrigin origin{dir == 0 ? StepOrigin::Kind::EquationLR
                                   : StepOrigin::Kind::EquationRL,
                          i};
        std::optional<Substitution> sigma = match(from, sub);
        if (!sigma) continue;
        std::vector<Variable> extras = detail::unbound_vars(to, *sigma);
        // Enumerate filler assignments for the extra variables, capped.
        std::vector<Substitution> assignments{*sigma};
        const std::size_t kMaxAssignments = 64;
        for (const Variable& v : extras) {
          std::vector<Substitution> next;
          for (const Substitution& base : assignments) {
            for (const Term& filler : fillers) {
              if (next.size() >= kMaxAssignments) break;
              Substitution ext = base;
              ext.bind(v, filler);
              next.push_back(ext);
            }
            if (next.size() >= kMaxAssignments) break;
          }
          assignments = std::move(next);
        }
        for (const Substitution& full : assignments) {
          Term instance = apply_subst(to, full);
          if (!order_greater(*sys.order, sub, instance)) continue;
          Term target = replace_at(t, p, instance);
          if (seen.emplace(target, p).second)
            out.push_back({t, target, p, origin, full});
        }
      }
    }
  }
  return out;
}

/// Does some plain step rewrite source to exactly target? Right-side-only
/// variables are bound by matching against the claimed target, so the
/// check is exact rather than a search over instantiations.
inline bool plain_step_exists(const RewriteSystem& sys, const Term& source,
                              const Term& target) {
  std::vector<detail::OrientedCandidate> cands = detail::plain_candidates(sys);
  for (const Position& p : positions(source)) {
    const Term* tp = subterm_at_opt(target, p);
    if (!tp || replace_at(source, p, *tp) != target) continue;
    const Term& sp = subterm_at(source, p);
    for (const detail::OrientedCandidate& c : cands)
      if (match_all({{c.lhs, sp}, {c.rhs, *tp}})) return true;
  }
  return false;
}

/// Does some ordered step rewrite source to exactly target? Equation
/// instances additionally require source|p to be greater than target|p.
inline bool ordered_step_exists(const RewriteSystem& sys, const Term& source,
                                const Term& target) {
  for (const Position& p : positions(source)) {
    const Term* tp = subterm_at_opt(target, p);
    if (!tp || replace_at(source, p, *tp) != target) continue;
    const Term& sp = subterm_at(source, p);
    for (const Rule& r : sys.rules)
      if (match_all({{r.lhs, sp}, {r.rhs, *tp}})) return true;
    for (const Equation& e : sys.equations) {
      bool applies = match_all({{e.lhs, sp}, {e.rhs, *tp}}).has_value() ||
                     match_all({{e.rhs, sp}, {e.lhs, *tp}}).has_value();
      if (applies && sys.order && order_greater(*sys.order, sp, *tp))
        return true;
    }
  }
  return false;
}

struct NormalFormResult {
  std::set<Term> normal_forms;
  bool budget_exceeded = false;
};

/// The set of ordered-rewriting normal forms reachable from t, by
/// exhaustive closure. Termination is guaranteed when every step decreases
/// in a well-founded order; the budget caps pathological blowup.
inline NormalFormResult normal_forms(const RewriteSystem& sys, const Term& t,
                                     const Budget& budget = {}) {
  NormalFormResult result;
  std::set<Term> visited;
  std::deque<Term> frontier{t};
  visited.insert(t);
  while (!frontier.empty()) {
    Term u = frontier.front();
    frontier.pop_front();
    std::vector<StepWitness> steps = ordered_successors(sys, u);
    if (steps.empty()) {
      result.normal_forms.insert(u);
      continue;
    }
    for (const StepWitness& w : steps) {
      if (term_size(w.target) > budget.max_term_size) {
        result.budget_exceeded = true;
        continue;
      }
      if (visited.count(w.target)) continue;
      if (visited.size() >= budget.max_terms) {
        result.budget_exceeded = true;
        return result;
      }
      visited.insert(w.target);
      frontier.push_back(w.target);
    }
  }
  return result;
}

enum class JoinResult { Joinable, NotJoinable, BudgetExceeded };

/// s and t are joinable iff their reachable-term closures under ordered
/// rewriting intersect. Reachable-set intersection, not normal-form
/// comparison: ordered rewriting need not be confluent on open terms.
inline JoinResult joinable(const RewriteSystem& sys, const Term& s,
                           const Term& t, const Budget& budget = {}) {
  if (s == t) return JoinResult::Joinable;
  std::set<Term> left{s}, right{t};
  std::deque<Term> lfront{s}, rfront{t};
  bool truncated = false;
  auto expand = [&](std::set<Term>& own, std::deque<Term>& front,
                    const std::set<Term>& other) -> std::optional<JoinResult> {
    Term u = front.front();
    front.pop_front();
    for (const StepWitness& w : ordered_successors(sys, u)) {
      if (term_size(w.target) > budget.max_term_size) {
        truncated = true;
        continue;
      }
      if (!own.insert(w.target).second) continue;
      if (other.count(w.target)) return JoinResult::Joinable;
      if (left.size() + right.size() > budget.max_terms)
        return JoinResult::BudgetExceeded;
      front.push_back(w.target);
    }
    return std::nullopt;
  };
  while (!lfront.empty() || !rfront.empty()) {
    if (!lfront.empty() && (rfront.empty() || left.size() <= right.size())) {
      if (auto r = expand(left, lfront, right)) return *r;
    } else {
      if (auto r = expand(right, rfront, left)) return *r;
    }
  }
  return truncated ? JoinResult::BudgetExceeded : JoinResult::NotJoinable;
}

/// Breadth-first search for a conversion s <->*_E t of at most depth
/// steps. Absence is inconclusive (bounded search). Extra right-side
/// variables are instantiated with subterms of the goal or a fresh
/// variable, which finds the conversions that matter at this scale.
inline std::optional<std::vector<Term>> bounded_conversion(
    const std::vector<Equation>& eqs, const Term& s, const Term& t,
    std::size_t depth) {
  if (s == t) return std::vector<Term>{s};
  RewriteSystem sys{{}, eqs, std::nullopt};
  std::vector<detail::OrientedCandidate> cands = detail::plain_candidates(sys);
  std::vector<Term> goal_fillers = detail::distinct_subterms(t);

  std::map<Term, Term> parent;
  std::deque<std::pair<Term, std::size_t>> frontier{{s, 0}};
  parent.emplace(s, s);
  const std::size_t kMaxNodes = 20000;

  auto trace_back = [&](Term last) {
    std::vector<Term> trace{last};
    while (trace.back() != s) trace.push_back(parent.at(trace.back()));
    std::reverse(trace.begin(), trace.end());
    return trace;
  };

  while (!frontier.empty()) {
    auto [u, d] = frontier.front();
    frontier.pop_front();
    if (d >= depth) continue;
    std::set<Variable> used = vars_of(u);
    for (const Variable& v : vars_of(t)) used.insert(v);
    for (const Position& p : positions(u)) {
      const Term& sub = subterm_at(u, p);
      for (const detail::OrientedCandidate& c : cands) {
        std::optional<Substitution> sigma = match(c.lhs, sub);
        if (!sigma) continue;
        std::vector<Variable> extras = detail::unbound_vars(c.rhs, *sigma);
        std::vector<Substitution> assignments{*sigma};
        const std::size_t kMaxAssignments = 128;
        for (const Variable& v : extras) {
          std::vector<Substitution> next;
          for (const Substitution& base : assignments) {
            if (next.size() >= kMaxAssignments) break;
            for (const Term& filler : goal_fillers) {
              if (next.size() >= kMaxAssignments) break;
              Substitution ext = base;
              ext.bind(v, filler);
              next.push_back(ext);
            }
            Substitution fresh_ext = base;
            fresh_ext.bind(v, Term::var(fresh_name(v.name, used)));
            next.push_back(fresh_ext);
          }
          assignments = std::move(next);
        }
        for (const Substitution& full : assignments) {
          Term target = replace_at(u, p, apply_subst(c.rhs, full));
          if (parent.count(target)) continue;
          parent.emplace(target, u);
          if (target == t) return trace_back(target);
          if (parent.size() > kMaxNodes) return std::nullopt;
          frontier.emplace_back(target, d + 1);
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace okb
