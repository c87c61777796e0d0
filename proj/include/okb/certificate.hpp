//===--- certificate.hpp - Ordered-completion proof checking -------------===//
//
// Part of the okb toolkit. Licensed under the Apache License v2.0.
// See LICENSE for license information.
//
//===----------------------------------------------------------------------===//
//
// A certificate carries the input equations, the reduction order, a step
// sequence, and the claimed final system. Checking runs five phases in a
// fixed order so reports are stable and the cheapest checks come first:
//
//   1. order: the precedence is total on the inferred signature, KBO
//      parameters are admissible, and a minimal constant exists whenever
//      the signature has constants at all.
//   2. run: the steps replay from (E0, empty).
//   3. final state: the replayed system matches the claimed one; rules
//      modulo variants, equations modulo variants or reversed variants.
//   4. rule orientation: every claimed rule is itself oriented.
//   5. ground confluence: every extended critical pair of symcl(E) u R is
//      joinable under S or an instance of an equation in symcl(E).
//
//===----------------------------------------------------------------------===//

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "okb/critical.hpp"
#include "okb/okb.hpp"
#include "okb/order.hpp"
#include "okb/rewrite.hpp"
#include "okb/term.hpp"

namespace okb {

struct Certificate {
  std::vector<Equation> input;
  ReductionOrderSpec order;
  std::vector<InferenceStep> steps;
  ProverState claimed;
};

enum class CheckPhase { Order, Run, FinalState, GroundConfluence, Resources };

inline const char* to_string(CheckPhase p) {
  switch (p) {
    case CheckPhase::Order: return "order";
    case CheckPhase::Run: return "run";
    case CheckPhase::FinalState: return "final-state";
    case CheckPhase::GroundConfluence: return "ground-confluence";
    case CheckPhase::Resources: return "resources";
  }
  return "?";
}

/// How one critical pair was discharged on the accept path.
struct CpDischarge {
  Equation pair;
  enum class How { Instance, Joinable } how;
};

struct CheckReport {
  bool accepted = false;
  CheckPhase phase = CheckPhase::Order;    // failing phase when rejected
  std::optional<std::size_t> step_index;   // 1-based, run phase only
  std::string reason;
  std::vector<CpDischarge> cp_log;         // audit of phase 5, accept path
  std::size_t states_checked = 0;          // states that passed R within >
  std::optional<Symbol> minimal;           // minimal constant, when any
};

struct GroundConfluenceOutcome {
  enum class Status { Ok, Failed, BudgetExceeded } status = Status::Ok;
  std::optional<CriticalPair> failing;
  std::vector<CpDischarge> log;
};

/// Phase 5 standalone: every extended critical pair of symcl(E) u R must
/// be an instance of an equation in symcl(E) or joinable under S. Resource
/// exhaustion is distinguished from genuine failure.
inline GroundConfluenceOutcome check_ground_confluence(
    const ProverState& state, const ReductionOrderSpec& order,
    const Budget& budget = {}) {
  GroundConfluenceOutcome out;
  std::vector<Equation> sc = symcl(state.equations);
  std::vector<Equation> collection = sc;
  for (const Rule& r : state.rules)
    collection.push_back(Equation{r.lhs, r.rhs});
  RewriteSystem sys{state.rules, state.equations, order};
  for (const CriticalPair& cp : extended_critical_pairs(collection, order)) {
    if (is_instance_of(cp, sc)) {
      out.log.push_back({{cp.lhs, cp.rhs}, CpDischarge::How::Instance});
      continue;
    }
    JoinResult jr = joinable(sys, cp.lhs, cp.rhs, budget);
    if (jr == JoinResult::Joinable) {
      out.log.push_back({{cp.lhs, cp.rhs}, CpDischarge::How::Joinable});
      continue;
    }
    out.failing = cp;
    out.status = jr == JoinResult::BudgetExceeded
                     ? GroundConfluenceOutcome::Status::BudgetExceeded
                     : GroundConfluenceOutcome::Status::Failed;
    return out;
  }
  return out;
}

namespace detail {

inline void add_step_terms(Signature& sig, const InferenceStep& step) {
  struct Visitor {
    Signature& sig;
    void operator()(const DeduceStep& s) {
      sig.add_term(s.peak);
      sig.add_term(s.left);
      sig.add_term(s.right);
    }
    void operator()(const OrientLRStep& s) { add_eq(s.equation); }
    void operator()(const OrientRLStep& s) { add_eq(s.equation); }
    void operator()(const DeleteStep& s) { add_eq(s.equation); }
    void operator()(const ComposeStep& s) {
      sig.add_term(s.rule.lhs);
      sig.add_term(s.rule.rhs);
      sig.add_term(s.result);
    }
    void operator()(const SimplifyLeftStep& s) {
      add_eq(s.equation);
      sig.add_term(s.result);
    }
    void operator()(const SimplifyRightStep& s) {
      add_eq(s.equation);
      sig.add_term(s.result);
    }
    void operator()(const CollapseStep& s) {
      sig.add_term(s.rule.lhs);
      sig.add_term(s.rule.rhs);
      sig.add_term(s.result);
    }
    void add_eq(const Equation& e) {
      sig.add_term(e.lhs);
      sig.add_term(e.rhs);
    }
  };
  Visitor v{sig};
  std::visit(v, step);
}

/// Multiset matching modulo an equivalence given by `same`. Greedy is
/// exact here because variance is an equivalence relation.
template <typename T, typename Same>
inline std::optional<std::string> match_multiset(const std::vector<T>& got,
                                                 const std::vector<T>& want,
                                                 Same same,
                                                 const char* what) {
  std::vector<bool> used(got.size(), false);
  for (const T& w : want) {
    bool found = false;
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (used[i] || !same(got[i], w)) continue;
      used[i] = true;
      found = true;
      break;
    }
    if (!found)
      return std::string("claimed ") + what + " " + to_string(w) +
             " does not match the replayed state";
  }
  for (std::size_t i = 0; i < got.size(); ++i)
    if (!used[i])
      return std::string("replayed ") + what + " " + to_string(got[i]) +
             " is missing from the claimed state";
  return std::nullopt;
}

}  // namespace detail

/// The signature of everything a certificate mentions, with consistent
/// arities enforced.
inline Signature certificate_signature(const Certificate& cert) {
  Signature sig;
  for (const Equation& e : cert.input) {
    sig.add_term(e.lhs);
    sig.add_term(e.rhs);
  }
  for (const InferenceStep& s : cert.steps) detail::add_step_terms(sig, s);
  for (const Equation& e : cert.claimed.equations) {
    sig.add_term(e.lhs);
    sig.add_term(e.rhs);
  }
  for (const Rule& r : cert.claimed.rules) {
    sig.add_term(r.lhs);
    sig.add_term(r.rhs);
  }
  return sig;
}

inline CheckReport check_certificate(const Certificate& cert,
                                     const Budget& budget = {}) {
  CheckReport report;

  auto reject = [&](CheckPhase phase, std::string reason,
                    std::optional<std::size_t> step = std::nullopt) {
    report.accepted = false;
    report.phase = phase;
    report.reason = std::move(reason);
    report.step_index = step;
    return report;
  };

  // Phase 1: order.
  Signature sig;
  try {
    sig = certificate_signature(cert);
  } catch (const config_error& e) {
    return reject(CheckPhase::Order, e.what());
  }
  std::vector<std::string> violations = check_admissible(cert.order, sig);
  if (!violations.empty()) {
    std::string joined;
    for (std::size_t i = 0; i < violations.size(); ++i) {
      if (i > 0) joined += "; ";
      joined += violations[i];
    }
    return reject(CheckPhase::Order, joined);
  }
  if (!sig.constants().empty()) {
    try {
      report.minimal = minimal_constant(cert.order, sig);
    } catch (const config_error& e) {
      return reject(CheckPhase::Order, e.what());
    }
  }

  // Phase 2: run.
  Run run{cert.input, cert.steps};
  ReplayResult rr;
  try {
    rr = replay(run, cert.order);
  } catch (const config_error& e) {
    return reject(CheckPhase::Run, e.what());
  }
  if (!rr.ok) return reject(CheckPhase::Run, rr.error, rr.failed_step);
  report.states_checked = cert.steps.size() + 1;

  // Phase 3: final state, modulo variants.
  auto rule_same = [](const Rule& a, const Rule& b) {
    return variant_of(a.lhs, a.rhs, b.lhs, b.rhs);
  };
  auto eq_same = [](const Equation& a, const Equation& b) {
    return variant_of(a.lhs, a.rhs, b.lhs, b.rhs) ||
           variant_of(a.rhs, a.lhs, b.lhs, b.rhs);
  };
  if (auto err = detail::match_multiset(rr.final_state.rules,
                                        cert.claimed.rules, rule_same, "rule"))
    return reject(CheckPhase::FinalState, *err);
  if (auto err = detail::match_multiset(rr.final_state.equations,
                                        cert.claimed.equations, eq_same,
                                        "equation"))
    return reject(CheckPhase::FinalState, *err);

  // Phase 4: claimed rules are oriented.
  for (const Rule& r : cert.claimed.rules) {
    OrderDiagnosis d = order_compare(cert.order, r.lhs, r.rhs);
    if (d != OrderDiagnosis::Greater)
      return reject(CheckPhase::FinalState,
                    "claimed rule " + to_string(r) +
                        " is not oriented by the order (order returned " +
                        to_string(d) + ")");
  }

  // Phase 5: ground confluence.
  GroundConfluenceOutcome gc;
  try {
    gc = check_ground_confluence(cert.claimed, cert.order, budget);
  } catch (const config_error& e) {
    return reject(CheckPhase::GroundConfluence, e.what());
  }
  if (gc.status == GroundConfluenceOutcome::Status::BudgetExceeded)
    return reject(CheckPhase::Resources,
                  "joinability budget exhausted on critical pair " +
                      to_string(*gc.failing));
  if (gc.status == GroundConfluenceOutcome::Status::Failed)
    return reject(CheckPhase::GroundConfluence,
                  "critical pair " + to_string(*gc.failing) +
                      " is neither joinable nor an instance of an equation");

  report.accepted = true;
  report.cp_log = std::move(gc.log);
  return report;
}

}  // namespace okb
