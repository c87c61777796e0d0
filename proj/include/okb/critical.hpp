//===--- critical.hpp - Extended overlaps and critical pairs -------------===//
//
// Part of the okb toolkit. Licensed under the Apache License v2.0.
// See LICENSE for license information.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "okb/order.hpp"
#include "okb/rewrite.hpp"
#include "okb/subst.hpp"
#include "okb/term.hpp"

namespace okb {

/// An overlap of two variable-disjoint equation variants l1 == r1 and
/// l2 == r2 at a function position p of l2, where l1 unifies with l2|p and
/// neither instantiated equation is oriented against the order:
/// r1*mgu is not greater than l1*mgu, and r2*mgu not greater than l2*mgu.
struct ExtendedOverlap {
  std::size_t outer_index = 0;  // index of l2 == r2 in the input list
  std::size_t inner_index = 0;  // index of l1 == r1 in the input list
  Equation outer;               // as listed
  Equation inner;               // renamed apart from outer
  Position position;
  Substitution mgu;
};

/// The pair l2[r1]_p * mgu == r2 * mgu together with its provenance.
struct CriticalPair {
  Term lhs;
  Term rhs;
  ExtendedOverlap overlap;
};

inline std::string to_string(const CriticalPair& cp) {
  return to_string(cp.lhs) + " == " + to_string(cp.rhs);
}

/// All extended critical pairs over the given oriented equations. The
/// caller passes the collection it intends (for the ground-confluence
/// criterion: symcl(E) plus the rules read as one-directional equations).
/// Root overlaps of an equation with its own renaming in the same
/// orientation are excluded; overlaps between the two orientations of one
/// equation are kept. Output order is deterministic: outer index, inner
/// index, position.
inline std::vector<CriticalPair> extended_critical_pairs(
    const std::vector<Equation>& eqs, const ReductionOrderSpec& order) {
  std::vector<CriticalPair> out;
  for (std::size_t j = 0; j < eqs.size(); ++j) {
    const Equation& outer = eqs[j];
    std::set<Variable> avoid = vars_of(outer.lhs, outer.rhs);
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      RenamedPair inner = rename_apart(eqs[i].lhs, eqs[i].rhs, avoid);
      for (const Position& p : fun_positions(outer.lhs)) {
        if (i == j && p.empty()) continue;
        std::optional<Substitution> mgu =
            unify(inner.lhs, subterm_at(outer.lhs, p));
        if (!mgu) continue;
        if (order_greater(order, apply_subst(inner.rhs, *mgu),
                          apply_subst(inner.lhs, *mgu)))
          continue;
        if (order_greater(order, apply_subst(outer.rhs, *mgu),
                          apply_subst(outer.lhs, *mgu)))
          continue;
        Term lhs = apply_subst(replace_at(outer.lhs, p, inner.rhs), *mgu);
        Term rhs = apply_subst(outer.rhs, *mgu);
        out.push_back({std::move(lhs), std::move(rhs),
                       {j, i, outer, Equation{inner.lhs, inner.rhs}, p, *mgu}});
      }
    }
  }
  return out;
}

/// True iff some equation s' == t' in eqs and a single substitution sigma
/// give s'*sigma == cp.lhs and t'*sigma == cp.rhs. The caller passes the
/// symmetric closure it intends.
inline bool is_instance_of(const CriticalPair& cp,
                           const std::vector<Equation>& eqs) {
  for (const Equation& e : eqs)
    if (match_all({{e.lhs, cp.lhs}, {e.rhs, cp.rhs}})) return true;
  return false;
}

}  // namespace okb
