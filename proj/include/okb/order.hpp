//===--- order.hpp - KBO and LPO reduction orders -------------------------===//
//
// Part of the okb toolkit. Licensed under the Apache License v2.0.
// See LICENSE for license information.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "okb/subst.hpp"
#include "okb/term.hpp"

namespace okb {

/// Outcome of a comparison attempt. Equal is returned only for
/// syntactically equal terms.
enum class OrderDiagnosis { Greater, Smaller, Equal, Incomparable };

inline const char* to_string(OrderDiagnosis d) {
  switch (d) {
    case OrderDiagnosis::Greater: return "Greater";
    case OrderDiagnosis::Smaller: return "Smaller";
    case OrderDiagnosis::Equal: return "Equal";
    case OrderDiagnosis::Incomparable: return "Incomparable";
  }
  return "?";
}

/// A total strict order on function symbols, listed from greatest to
/// least. Duplicate entries are recorded and reported by admissibility
/// checking.
class Precedence {
 public:
  Precedence() = default;

  explicit Precedence(std::vector<std::string> greatest_to_least)
      : listing_(std::move(greatest_to_least)) {
    for (std::size_t i = 0; i < listing_.size(); ++i) {
      auto [it, inserted] = rank_.emplace(listing_[i], i);
      if (!inserted) duplicates_.push_back(listing_[i]);
    }
  }

  const std::vector<std::string>& listing() const { return listing_; }
  const std::vector<std::string>& duplicates() const { return duplicates_; }

  bool contains(const std::string& name) const { return rank_.count(name) > 0; }

  /// f comes strictly before g in the listing. Throws config_error when a
  /// symbol is missing from the precedence.
  bool greater(const std::string& f, const std::string& g) const {
    return rank_of(f) < rank_of(g);
  }

  std::size_t rank_of(const std::string& name) const {
    auto it = rank_.find(name);
    if (it == rank_.end())
      throw config_error("symbol '" + name + "' missing from precedence");
    return it->second;
  }

 private:
  std::vector<std::string> listing_;
  std::map<std::string, std::size_t> rank_;
  std::vector<std::string> duplicates_;
};

using Weight = unsigned long long;

struct KboParams {
  Precedence precedence;
  Weight w0 = 1;
  std::map<std::string, Weight> weights;  // unlisted symbols weigh 0

  Weight weight_of(const std::string& name) const {
    auto it = weights.find(name);
    return it == weights.end() ? 0 : it->second;
  }
};

struct LpoParams {
  Precedence precedence;
};

/// The reduction order of a problem: a KBO or an LPO description.
using ReductionOrderSpec = std::variant<KboParams, LpoParams>;

inline const Precedence& precedence_of(const ReductionOrderSpec& spec) {
  if (const auto* kbo = std::get_if<KboParams>(&spec)) return kbo->precedence;
  return std::get<LpoParams>(spec).precedence;
}

inline bool is_kbo(const ReductionOrderSpec& spec) {
  return std::holds_alternative<KboParams>(spec);
}

namespace detail {

inline Weight kbo_weight(const KboParams& params, const Term& t) {
  if (t.is_var()) return params.w0;
  Weight w = params.weight_of(t.name());
  for (const Term& a : t.args()) w += kbo_weight(params, a);
  return w;
}

// Every variable occurs in s at least as often as in t.
inline bool var_condition(const Term& s, const Term& t) {
  std::map<Variable, std::size_t> cs = var_counts(s);
  for (const auto& [x, n] : var_counts(t)) {
    auto it = cs.find(x);
    if (it == cs.end() || it->second < n) return false;
  }
  return true;
}

inline bool kbo_gt(const KboParams& params, const Term& s, const Term& t) {
  if (!var_condition(s, t)) return false;
  Weight ws = kbo_weight(params, s);
  Weight wt = kbo_weight(params, t);
  if (ws > wt) return true;
  if (ws < wt) return false;
  if (t.is_var()) {
    // s must be f^n(t) for the weight-zero unary symbol f, n >= 1.
    const Term* cur = &s;
    std::size_t stripped = 0;
    while (cur->is_fun() && cur->args().size() == 1 &&
           params.weight_of(cur->name()) == 0) {
      cur = &cur->args()[0];
      ++stripped;
    }
    return stripped > 0 && *cur == t;
  }
  if (s.is_var()) return false;
  if (s.name() != t.name())
    return params.precedence.greater(s.name(), t.name());
  if (s.args().size() != t.args().size())
    throw config_error("symbol '" + s.name() + "' used with two arities");
  for (std::size_t i = 0; i < s.args().size(); ++i) {
    if (s.args()[i] == t.args()[i]) continue;
    return kbo_gt(params, s.args()[i], t.args()[i]);
  }
  return false;
}

inline bool lpo_gt(const Precedence& prec, const Term& s, const Term& t) {
  if (s.is_var()) return false;
  if (t.is_var()) return occurs(t.as_var(), s);
  // (a) some argument of s is >= t
  for (const Term& si : s.args())
    if (si == t || lpo_gt(prec, si, t)) return true;
  if (s.name() != t.name()) {
    // (b) head precedence decides, s must dominate every argument of t
    if (!prec.greater(s.name(), t.name())) return false;
    for (const Term& tj : t.args())
      if (!lpo_gt(prec, s, tj)) return false;
    return true;
  }
  // (c) equal heads: lexicographic on arguments, s dominates the rest
  if (s.args().size() != t.args().size())
    throw config_error("symbol '" + s.name() + "' used with two arities");
  for (std::size_t i = 0; i < s.args().size(); ++i) {
    if (s.args()[i] == t.args()[i]) continue;
    if (!lpo_gt(prec, s.args()[i], t.args()[i])) return false;
    for (std::size_t j = i + 1; j < t.args().size(); ++j)
      if (!lpo_gt(prec, s, t.args()[j])) return false;
    return true;
  }
  return false;
}

}  // namespace detail

inline OrderDiagnosis kbo_compare(const KboParams& params, const Term& s,
                                  const Term& t) {
  if (s == t) return OrderDiagnosis::Equal;
  if (detail::kbo_gt(params, s, t)) return OrderDiagnosis::Greater;
  if (detail::kbo_gt(params, t, s)) return OrderDiagnosis::Smaller;
  return OrderDiagnosis::Incomparable;
}

inline OrderDiagnosis lpo_compare(const Precedence& prec, const Term& s,
                                  const Term& t) {
  if (s == t) return OrderDiagnosis::Equal;
  if (detail::lpo_gt(prec, s, t)) return OrderDiagnosis::Greater;
  if (detail::lpo_gt(prec, t, s)) return OrderDiagnosis::Smaller;
  return OrderDiagnosis::Incomparable;
}

inline OrderDiagnosis order_compare(const ReductionOrderSpec& spec,
                                    const Term& s, const Term& t) {
  if (const auto* kbo = std::get_if<KboParams>(&spec))
    return kbo_compare(*kbo, s, t);
  return lpo_compare(std::get<LpoParams>(spec).precedence, s, t);
}

inline bool order_greater(const ReductionOrderSpec& spec, const Term& s,
                          const Term& t) {
  return order_compare(spec, s, t) == OrderDiagnosis::Greater;
}

/// Validates the order spec against a signature. Returns all violations,
/// each naming the offending symbol or constraint; empty means admissible.
inline std::vector<std::string> check_admissible(const ReductionOrderSpec& spec,
                                                 const Signature& sig) {
  std::vector<std::string> violations;
  const Precedence& prec = precedence_of(spec);
  for (const std::string& dup : prec.duplicates())
    violations.push_back("duplicate precedence entry '" + dup + "'");
  for (const auto& [name, arity] : sig.symbols())
    if (!prec.contains(name))
      violations.push_back("symbol '" + name + "' missing from precedence");
  for (const std::string& entry : prec.listing())
    if (!sig.contains(entry))
      violations.push_back("precedence entry '" + entry +
                           "' not in signature");
  if (const auto* kbo = std::get_if<KboParams>(&spec)) {
    if (kbo->w0 == 0) violations.push_back("w0 must be positive");
    for (const auto& [name, weight] : kbo->weights)
      if (!sig.contains(name))
        violations.push_back("weight entry '" + name + "' not in signature");
    for (const auto& [name, arity] : sig.symbols()) {
      if (arity == 0 && kbo->weight_of(name) < kbo->w0)
        violations.push_back("constant '" + name + "' has weight " +
                             std::to_string(kbo->weight_of(name)) +
                             " below w0");
      if (arity == 1 && kbo->weight_of(name) == 0 &&
          (prec.listing().empty() || prec.listing().front() != name))
        violations.push_back("unary symbol '" + name +
                             "' has weight 0 but is not precedence-greatest");
    }
  }
  return violations;
}

/// The constant c with t >= c for every ground term t. KBO: among the
/// constants of minimal weight, the precedence-least; LPO: the
/// precedence-least constant. Throws config_error when the signature has
/// no constants (no ground terms exist).
inline Symbol minimal_constant(const ReductionOrderSpec& spec,
                               const Signature& sig) {
  std::vector<Symbol> constants = sig.constants();
  if (constants.empty())
    throw config_error("signature has no constants: no ground terms exist");
  const Precedence& prec = precedence_of(spec);
  const Symbol* best = nullptr;
  for (const Symbol& c : constants) {
    if (!best) {
      best = &c;
      continue;
    }
    if (const auto* kbo = std::get_if<KboParams>(&spec)) {
      Weight wc = kbo->weight_of(c.name);
      Weight wb = kbo->weight_of(best->name);
      if (wc < wb ||
          (wc == wb && prec.rank_of(c.name) > prec.rank_of(best->name)))
        best = &c;
    } else {
      if (prec.rank_of(c.name) > prec.rank_of(best->name)) best = &c;
    }
  }
  return *best;
}

/// Bounded empirical totality check: enumerates all ground terms up to
/// size_bound and compares every distinct pair. Returns the first pair
/// that fails to compare strictly, or nullopt when all pairs do.
inline std::optional<std::pair<Term, Term>> ground_total_on(
    const ReductionOrderSpec& spec, const Signature& sig,
    std::size_t size_bound) {
  std::vector<Term> terms = enumerate_ground_terms(sig, size_bound);
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      OrderDiagnosis d = order_compare(spec, terms[i], terms[j]);
      if (d != OrderDiagnosis::Greater && d != OrderDiagnosis::Smaller)
        return std::make_pair(terms[i], terms[j]);
    }
  return std::nullopt;
}

}  // namespace okb
