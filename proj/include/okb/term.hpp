//===--- term.hpp - First-order terms, positions and signatures ----------===//
//
// Part of the okb toolkit. Licensed under the Apache License v2.0.
// See LICENSE for license information.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace okb {

/// Raised for misconfigured orders and inconsistent signatures.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A named variable. Variable names and function-symbol names live in
/// disjoint namespaces within one problem; the parser enforces the split.
struct Variable {
  std::string name;

  friend bool operator==(const Variable& a, const Variable& b) {
    return a.name == b.name;
  }
  friend bool operator<(const Variable& a, const Variable& b) {
    return a.name < b.name;
  }
};

/// A function symbol with its arity.
struct Symbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.name == b.name && a.arity == b.arity;
  }
  friend bool operator<(const Symbol& a, const Symbol& b) {
    return a.name != b.name ? a.name < b.name : a.arity < b.arity;
  }
};

/// A first-order term: a variable, or a function symbol applied to a list
/// of argument terms. Terms are immutable values; equality is syntactic.
class Term {
 public:
  static Term var(std::string name) {
    Term t;
    t.is_var_ = true;
    t.name_ = std::move(name);
    return t;
  }

  static Term fun(std::string name, std::vector<Term> args = {}) {
    Term t;
    t.is_var_ = false;
    t.name_ = std::move(name);
    t.args_ = std::move(args);
    return t;
  }

  bool is_var() const { return is_var_; }
  bool is_fun() const { return !is_var_; }
  const std::string& name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }

  Variable as_var() const { return Variable{name_}; }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.is_var_ != b.is_var_ || a.name_ != b.name_) return false;
    return a.args_ == b.args_;
  }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

  // Total order; used for deterministic sets and dedup, not semantics.
  friend bool operator<(const Term& a, const Term& b) {
    if (a.is_var_ != b.is_var_) return a.is_var_;
    if (a.name_ != b.name_) return a.name_ < b.name_;
    return a.args_ < b.args_;
  }

 private:
  bool is_var_ = true;
  std::string name_;
  std::vector<Term> args_;
};

/// Number of symbol occurrences (variables included).
inline std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const Term& a : t.args()) n += term_size(a);
  return n;
}

inline bool is_ground(const Term& t) {
  if (t.is_var()) return false;
  for (const Term& a : t.args())
    if (!is_ground(a)) return false;
  return true;
}

inline void collect_vars(const Term& t, std::set<Variable>& out) {
  if (t.is_var()) {
    out.insert(t.as_var());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

inline std::set<Variable> vars_of(const Term& t) {
  std::set<Variable> out;
  collect_vars(t, out);
  return out;
}

inline std::set<Variable> vars_of(const Term& s, const Term& t) {
  std::set<Variable> out;
  collect_vars(s, out);
  collect_vars(t, out);
  return out;
}

inline void count_vars(const Term& t, std::map<Variable, std::size_t>& out) {
  if (t.is_var()) {
    ++out[t.as_var()];
    return;
  }
  for (const Term& a : t.args()) count_vars(a, out);
}

inline std::map<Variable, std::size_t> var_counts(const Term& t) {
  std::map<Variable, std::size_t> out;
  count_vars(t, out);
  return out;
}

inline std::string to_string(const Term& t) {
  if (t.is_var() || t.args().empty()) return t.name();
  std::string out = t.name();
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i > 0) out += ',';
    out += to_string(t.args()[i]);
  }
  out += ')';
  return out;
}

/// A position: a sequence of 1-based argument indices. Empty = root.
using Position = std::vector<std::size_t>;

inline std::string to_string(const Position& p) {
  if (p.empty()) return "root";
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(p[i]);
  }
  out += ']';
  return out;
}

/// Subterm of t at p. Throws std::out_of_range naming the offending index
/// when p is not a position of t.
inline const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::size_t idx : p) {
    if (idx < 1 || idx > cur->args().size())
      throw std::out_of_range("invalid position index " + std::to_string(idx) +
                              " in term " + to_string(t));
    cur = &cur->args()[idx - 1];
  }
  return *cur;
}

inline const Term* subterm_at_opt(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::size_t idx : p) {
    if (idx < 1 || idx > cur->args().size()) return nullptr;
    cur = &cur->args()[idx - 1];
  }
  return cur;
}

/// Replaces the subterm of t at p with u. Same position validity rules as
/// subterm_at.
inline Term replace_at(const Term& t, const Position& p, const Term& u) {
  if (p.empty()) return u;
  std::size_t idx = p.front();
  if (t.is_var() || idx < 1 || idx > t.args().size())
    throw std::out_of_range("invalid position index " + std::to_string(idx) +
                            " in term " + to_string(t));
  std::vector<Term> args = t.args();
  Position rest(p.begin() + 1, p.end());
  args[idx - 1] = replace_at(args[idx - 1], rest, u);
  return Term::fun(t.name(), std::move(args));
}

namespace detail {
inline void walk_positions(const Term& t, Position& here, bool fun_only,
                           std::vector<Position>& out) {
  if (!fun_only || t.is_fun()) out.push_back(here);
  for (std::size_t i = 1; i <= t.args().size(); ++i) {
    here.push_back(i);
    walk_positions(t.args()[i - 1], here, fun_only, out);
    here.pop_back();
  }
}
}  // namespace detail

/// All positions of t in outermost-leftmost (preorder) order.
inline std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position here;
  detail::walk_positions(t, here, false, out);
  return out;
}

/// Positions of non-variable subterms, outermost-leftmost.
inline std::vector<Position> fun_positions(const Term& t) {
  std::vector<Position> out;
  Position here;
  detail::walk_positions(t, here, true, out);
  return out;
}

/// An arity map. Each name has exactly one arity; conflicting uses raise
/// config_error.
class Signature {
 public:
  void add(const std::string& name, std::size_t arity) {
    auto [it, inserted] = arity_.emplace(name, arity);
    if (!inserted && it->second != arity)
      throw config_error("symbol '" + name + "' used with arity " +
                         std::to_string(it->second) + " and " +
                         std::to_string(arity));
  }

  void add_term(const Term& t) {
    if (t.is_var()) return;
    add(t.name(), t.args().size());
    for (const Term& a : t.args()) add_term(a);
  }

  bool contains(const std::string& name) const { return arity_.count(name) > 0; }

  std::size_t arity(const std::string& name) const {
    auto it = arity_.find(name);
    if (it == arity_.end())
      throw config_error("symbol '" + name + "' not in signature");
    return it->second;
  }

  std::size_t size() const { return arity_.size(); }
  bool empty() const { return arity_.empty(); }

  const std::map<std::string, std::size_t>& symbols() const { return arity_; }

  std::vector<Symbol> constants() const {
    std::vector<Symbol> out;
    for (const auto& [name, arity] : arity_)
      if (arity == 0) out.push_back(Symbol{name, 0});
    return out;
  }
};

/// All ground terms over the signature with at most max_size symbol
/// occurrences, grouped by size and otherwise deterministic.
inline std::vector<Term> enumerate_ground_terms(const Signature& sig,
                                                std::size_t max_size) {
  // by_size[k] holds the ground terms with exactly k+1 symbols.
  std::vector<std::vector<Term>> by_size(max_size);
  for (std::size_t size = 1; size <= max_size; ++size) {
    std::vector<Term>& bucket = by_size[size - 1];
    for (const auto& [name, arity] : sig.symbols()) {
      if (arity == 0) {
        if (size == 1) bucket.push_back(Term::fun(name));
        continue;
      }
      if (size < arity + 1) continue;
      // Distribute the remaining size-1 symbols among the argument slots.
      struct Expander {
        const std::vector<std::vector<Term>>& by_size;
        std::size_t arity;
        std::vector<Term> current;
        std::vector<std::vector<Term>>& out;
        void go(std::size_t slot, std::size_t remaining) {
          std::size_t slots_after = arity - slot - 1;
          if (slot == arity) {
            if (remaining == 0) out.push_back(current);
            return;
          }
          for (std::size_t k = 1; k + slots_after <= remaining; ++k) {
            for (const Term& arg : by_size[k - 1]) {
              current.push_back(arg);
              go(slot + 1, remaining - k);
              current.pop_back();
            }
          }
        }
      };
      std::vector<std::vector<Term>> tuples;
      Expander ex{by_size, arity, {}, tuples};
      ex.go(0, size - 1);
      for (auto& tup : tuples) bucket.push_back(Term::fun(name, tup));
    }
  }
  std::vector<Term> out;
  for (auto& bucket : by_size)
    for (auto& t : bucket) out.push_back(std::move(t));
  return out;
}

}  // namespace okb
