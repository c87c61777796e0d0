//===--- subst.hpp - Substitutions, matching, unification, variants ------===//
//
// Part of the okb toolkit. Licensed under the Apache License v2.0.
// See LICENSE for license information.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "okb/term.hpp"

namespace okb {

/// A finite map from variables to terms. Identity bindings are normalized
/// away, so the domain never maps x to x.
class Substitution {
 public:
  Substitution() = default;

  void bind(const Variable& x, Term t) {
    if (t.is_var() && t.name() == x.name) {
      map_.erase(x);
      return;
    }
    map_[x] = std::move(t);
  }

  const Term* lookup(const Variable& x) const {
    auto it = map_.find(x);
    return it == map_.end() ? nullptr : &it->second;
  }

  bool bound(const Variable& x) const { return map_.count(x) > 0; }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }

  const std::map<Variable, Term>& bindings() const { return map_; }

  /// True iff the map is injective on its domain and every image is a
  /// variable.
  bool is_renaming() const {
    std::set<std::string> images;
    for (const auto& [x, t] : map_) {
      if (!t.is_var()) return false;
      if (!images.insert(t.name()).second) return false;
    }
    return true;
  }

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return a.map_ == b.map_;
  }

 private:
  std::map<Variable, Term> map_;
};

inline Term apply_subst(const Term& t, const Substitution& sigma) {
  if (t.is_var()) {
    const Term* img = sigma.lookup(t.as_var());
    return img ? *img : t;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(apply_subst(a, sigma));
  return Term::fun(t.name(), std::move(args));
}

inline std::string to_string(const Substitution& sigma) {
  std::string out = "{";
  bool first = true;
  for (const auto& [x, t] : sigma.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += x.name + " -> " + to_string(t);
  }
  out += '}';
  return out;
}

/// Simultaneous matching: finds sigma with pattern*sigma == subject for
/// every (pattern, subject) pair, binding pattern variables only.
inline std::optional<Substitution> match_all(
    const std::vector<std::pair<Term, Term>>& pairs) {
  // Raw map keeps identity bindings so nonlinear patterns stay consistent.
  std::map<Variable, Term> raw;
  std::vector<std::pair<const Term*, const Term*>> stack;
  for (const auto& [p, s] : pairs) stack.emplace_back(&p, &s);
  while (!stack.empty()) {
    auto [p, s] = stack.back();
    stack.pop_back();
    if (p->is_var()) {
      auto [it, inserted] = raw.emplace(p->as_var(), *s);
      if (!inserted && it->second != *s) return std::nullopt;
      continue;
    }
    if (s->is_var() || s->name() != p->name() ||
        s->args().size() != p->args().size())
      return std::nullopt;
    for (std::size_t i = 0; i < p->args().size(); ++i)
      stack.emplace_back(&p->args()[i], &s->args()[i]);
  }
  Substitution sigma;
  for (auto& [x, t] : raw) sigma.bind(x, std::move(t));
  return sigma;
}

inline std::optional<Substitution> match(const Term& pattern,
                                         const Term& subject) {
  return match_all({{pattern, subject}});
}

inline bool occurs(const Variable& x, const Term& t) {
  if (t.is_var()) return t.name() == x.name;
  for (const Term& a : t.args())
    if (occurs(x, a)) return true;
  return false;
}

enum class UnifyFailure { Clash, OccursCheck };

struct UnifyResult {
  std::optional<Substitution> mgu;
  std::optional<UnifyFailure> failure;
};

/// Syntactic unification with occurs check. On success the result is an
/// idempotent most general unifier.
inline UnifyResult unify_detailed(const Term& s, const Term& t) {
  Substitution sigma;
  std::vector<std::pair<Term, Term>> stack{{s, t}};
  while (!stack.empty()) {
    Term a = apply_subst(stack.back().first, sigma);
    Term b = apply_subst(stack.back().second, sigma);
    stack.pop_back();
    if (a == b) continue;
    if (!a.is_var() && b.is_var()) std::swap(a, b);
    if (a.is_var()) {
      Variable x = a.as_var();
      if (occurs(x, b)) return {std::nullopt, UnifyFailure::OccursCheck};
      // Compose to keep sigma idempotent.
      Substitution step;
      step.bind(x, b);
      Substitution next;
      for (const auto& [y, img] : sigma.bindings())
        next.bind(y, apply_subst(img, step));
      next.bind(x, b);
      sigma = std::move(next);
      continue;
    }
    if (a.name() != b.name() || a.args().size() != b.args().size())
      return {std::nullopt, UnifyFailure::Clash};
    for (std::size_t i = 0; i < a.args().size(); ++i)
      stack.emplace_back(a.args()[i], b.args()[i]);
  }
  return {sigma, std::nullopt};
}

inline std::optional<Substitution> unify(const Term& s, const Term& t) {
  return unify_detailed(s, t).mgu;
}

/// Appends a numeric suffix to base, incrementing until the name is unused.
inline std::string fresh_name(const std::string& base,
                              const std::set<Variable>& used) {
  for (std::size_t n = 0;; ++n) {
    std::string candidate = base + std::to_string(n);
    if (!used.count(Variable{candidate})) return candidate;
  }
}

struct RenamedPair {
  Term lhs;
  Term rhs;
  Substitution renaming;
};

/// Renames the variables of (lhs, rhs) that collide with avoid, producing a
/// variant sharing no variable with avoid. Non-colliding variables keep
/// their names.
inline RenamedPair rename_apart(const Term& lhs, const Term& rhs,
                                const std::set<Variable>& avoid) {
  std::set<Variable> used = avoid;
  std::set<Variable> own = vars_of(lhs, rhs);
  used.insert(own.begin(), own.end());
  Substitution pi;
  for (const Variable& x : own) {
    if (!avoid.count(x)) continue;
    Variable fresh{fresh_name(x.name, used)};
    used.insert(fresh);
    pi.bind(x, Term::var(fresh.name));
  }
  return {apply_subst(lhs, pi), apply_subst(rhs, pi), pi};
}

struct RenamedTerm {
  Term term;
  Substitution renaming;
};

inline RenamedTerm rename_apart(const Term& t, const std::set<Variable>& avoid) {
  RenamedPair p = rename_apart(t, t, avoid);
  return {p.lhs, p.renaming};
}

/// True iff s and t are equal up to a bijective variable renaming.
inline bool variant_of(const Term& s, const Term& t) {
  return match(s, t).has_value() && match(t, s).has_value();
}

/// Variant check on pairs with one consistent renaming across both
/// components (equations and rules are compared this way).
inline bool variant_of(const Term& s1, const Term& s2, const Term& t1,
                       const Term& t2) {
  return match_all({{s1, t1}, {s2, t2}}).has_value() &&
         match_all({{t1, s1}, {t2, s2}}).has_value();
}

}  // namespace okb
