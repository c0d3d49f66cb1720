// Bounded inhabitation search over judgment sets that one shared term must
// satisfy simultaneously. Moves:
//
//   SPLIT     judgment with intersection goal -> one judgment per member
//   ABSTRACT  all goals arrows -> bind one fresh shared variable
//   APPLY     pick a head bound in every context and an arity, choose one
//             component of the head's type per judgment, recurse on the
//             shared argument columns
//
// SPLIT is eager and free; ABSTRACT/APPLY each consume one level of the
// depth budget (the depth bound equals term height). States repeating on the
// current path are pruned. A brute-force normal-term enumerator doubles as
// the testing oracle.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "inhab/checker.hpp"
#include "inhab/terms.hpp"
#include "inhab/types.hpp"

namespace inhab {

struct SearchConfig {
  int max_depth = 6;
  std::optional<long long> max_branch;  // cap on APPLY combinations per node
};

struct SearchResult {
  std::optional<Term> term;
  std::vector<Derivation> transcripts;  // one per input judgment when found
  bool depth_limit_hit = false;         // search space was truncated

  bool found() const { return term.has_value(); }
};

namespace detail {

// All (argument list, tail) pairs reachable inside a type by selecting
// intersection members and consuming arrow sources. Tails are atoms or
// arrows; intersection points are always descended into.
inline void spine_tails_rec(const Type& t, std::vector<Type>& args,
                            std::vector<std::pair<std::vector<Type>, Type>>& out) {
  if (t.is_inter()) {
    for (const auto& m : t.members()) spine_tails_rec(m, args, out);
    return;
  }
  out.emplace_back(args, t);
  if (t.is_arrow()) {
    args.push_back(t.source());
    spine_tails_rec(t.target(), args, out);
    args.pop_back();
  }
}

inline std::vector<std::pair<std::vector<Type>, Type>> spine_tails(
    const Type& t) {
  std::vector<std::pair<std::vector<Type>, Type>> out;
  std::vector<Type> args;
  spine_tails_rec(t, args, out);
  return out;
}

struct SearchEngine {
  SearchConfig cfg;
  bool truncated = false;
  long long combos_tried = 0;

  static std::vector<Judgment> split_goals(const std::vector<Judgment>& in) {
    std::vector<Judgment> out;
    for (const auto& j : in) {
      for (const auto& m : j.goal.split_members())
        out.push_back(Judgment{j.ctx, m});
    }
    return out;
  }

  static std::string state_key(const std::vector<Judgment>& js) {
    std::vector<std::string> parts;
    parts.reserve(js.size());
    for (const auto& j : js)
      parts.push_back(j.ctx.render() + "|-" + print_type(j.goal));
    std::sort(parts.begin(), parts.end());
    std::string key;
    for (const auto& p : parts) {
      key += p;
      key += '\n';
    }
    return key;
  }

  std::string fresh_name(const std::vector<Judgment>& js, int& counter) const {
    while (true) {
      std::string name = "v" + std::to_string(++counter);
      bool clash = false;
      for (const auto& j : js) clash = clash || j.ctx.binds(name);
      if (!clash) return name;
    }
  }

  std::optional<Term> solve(const std::vector<Judgment>& raw, int depth,
                            std::set<std::string>& path, int fresh_counter) {
    std::vector<Judgment> js = split_goals(raw);
    std::string key = state_key(js);
    if (path.count(key)) return std::nullopt;  // repeat on this path
    if (depth >= cfg.max_depth) {
      truncated = true;
      return std::nullopt;
    }
    path.insert(key);
    auto result = expand(js, depth, path, fresh_counter);
    path.erase(key);
    return result;
  }

  std::optional<Term> expand(const std::vector<Judgment>& js, int depth,
                             std::set<std::string>& path, int fresh_counter) {
    // ABSTRACT
    bool all_arrows = true;
    for (const auto& j : js) all_arrows = all_arrows && j.goal.is_arrow();
    if (all_arrows) {
      std::string binder = fresh_name(js, fresh_counter);
      std::vector<Judgment> next;
      next.reserve(js.size());
      for (const auto& j : js)
        next.push_back(
            Judgment{j.ctx.extended(binder, j.goal.source()), j.goal.target()});
      if (auto body = solve(next, depth + 1, path, fresh_counter))
        return Term::abs(binder, *body);
    }

    // APPLY: heads bound in every context, in name order.
    std::vector<std::string> heads;
    for (const auto& [name, type] : js.front().ctx.bindings()) {
      (void)type;
      bool everywhere = true;
      for (const auto& j : js) everywhere = everywhere && j.ctx.binds(name);
      if (everywhere) heads.push_back(name);
    }
    for (const auto& head : heads) {
      // Per judgment, all usable components grouped by arity.
      std::vector<std::vector<std::pair<std::vector<Type>, Type>>> tails;
      std::size_t max_arity = 0;
      tails.reserve(js.size());
      for (const auto& j : js) {
        auto all = spine_tails(*j.ctx.lookup(head));
        for (const auto& t : all) max_arity = std::max(max_arity, t.first.size());
        tails.push_back(std::move(all));
      }
      for (std::size_t arity = 0; arity <= max_arity; ++arity) {
        std::vector<std::vector<std::pair<std::vector<Type>, Type>>> options;
        options.reserve(js.size());
        bool feasible = true;
        for (std::size_t i = 0; i < js.size(); ++i) {
          std::vector<std::pair<std::vector<Type>, Type>> fit;
          for (const auto& t : tails[i]) {
            if (t.first.size() == arity && t.second == js[i].goal)
              fit.push_back(t);
          }
          if (fit.empty()) {
            feasible = false;
            break;
          }
          options.push_back(std::move(fit));
        }
        if (!feasible) continue;
        if (auto term = try_combinations(js, head, arity, options, depth, path,
                                         fresh_counter))
          return term;
      }
    }
    return std::nullopt;
  }

  std::optional<Term> try_combinations(
      const std::vector<Judgment>& js, const std::string& head,
      std::size_t arity,
      const std::vector<std::vector<std::pair<std::vector<Type>, Type>>>& options,
      int depth, std::set<std::string>& path, int fresh_counter) {
    std::vector<std::size_t> pick(js.size(), 0);
    while (true) {
      if (cfg.max_branch && ++combos_tried > *cfg.max_branch) {
        truncated = true;
        return std::nullopt;
      }
      if (auto term = try_one(js, head, arity, options, pick, depth, path,
                              fresh_counter))
        return term;
      // odometer over per-judgment component choices
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == options[i].size()) {
        pick[i] = 0;
        ++i;
      }
      if (i == pick.size()) return std::nullopt;
    }
  }

  std::optional<Term> try_one(
      const std::vector<Judgment>& js, const std::string& head,
      std::size_t arity,
      const std::vector<std::vector<std::pair<std::vector<Type>, Type>>>& options,
      const std::vector<std::size_t>& pick, int depth,
      std::set<std::string>& path, int fresh_counter) {
    Term term = Term::var(head);
    for (std::size_t a = 0; a < arity; ++a) {
      std::vector<Judgment> column;
      column.reserve(js.size());
      for (std::size_t i = 0; i < js.size(); ++i)
        column.push_back(Judgment{js[i].ctx, options[i][pick[i]].first[a]});
      auto arg = solve(column, depth + 1, path, fresh_counter);
      if (!arg) return std::nullopt;
      term = Term::app(term, *arg);
    }
    return term;
  }
};

}  // namespace detail

inline SearchResult inhabit_multi(const std::vector<Judgment>& judgments,
                                  const SearchConfig& cfg) {
  if (judgments.empty())
    throw std::invalid_argument("inhabit_multi: empty judgment list");
  detail::SearchEngine engine{cfg};
  std::set<std::string> path;
  auto term = engine.solve(judgments, 0, path, 0);
  SearchResult result;
  result.depth_limit_hit = engine.truncated;
  if (term) {
    result.term = term;
    for (const auto& j : judgments) {
      auto d = check_with_transcript(j.ctx, *term, j.goal);
      if (!d)
        throw std::logic_error("search returned a term that fails checking");
      result.transcripts.push_back(std::move(*d));
    }
  }
  return result;
}

inline SearchResult inhabit(const Type& goal, const SearchConfig& cfg) {
  return inhabit_multi({Judgment{Context{}, goal}}, cfg);
}

// Brute-force oracle: every beta-normal term of at most `size_bound` nodes
// over the variables bound in all contexts (plus fresh binders) that passes
// check_multi. Deterministic order: node count, then rendering.
namespace detail {

inline void enumerate_normal(std::size_t budget,
                             const std::vector<std::string>& pool,
                             int fresh_counter, std::vector<Term>& out);

inline void extend_spine(const Term& fn, std::size_t used, std::size_t budget,
                         const std::vector<std::string>& pool,
                         int fresh_counter, std::vector<Term>& out) {
  if (used + 2 > budget) return;  // one App node plus at least a variable
  std::vector<Term> args;
  enumerate_normal(budget - used - 1, pool, fresh_counter, args);
  for (const auto& arg : args) {
    Term t = Term::app(fn, arg);
    out.push_back(t);
    extend_spine(t, used + 1 + arg.node_count(), budget, pool, fresh_counter,
                 out);
  }
}

inline void enumerate_normal(std::size_t budget,
                             const std::vector<std::string>& pool,
                             int fresh_counter, std::vector<Term>& out) {
  if (budget < 1) return;
  for (const auto& v : pool) out.push_back(Term::var(v));
  if (budget >= 2) {
    std::string fresh = "v" + std::to_string(fresh_counter + 1);
    auto extended = pool;
    if (std::find(extended.begin(), extended.end(), fresh) == extended.end())
      extended.push_back(fresh);
    std::vector<Term> bodies;
    enumerate_normal(budget - 1, extended, fresh_counter + 1, bodies);
    for (const auto& b : bodies) out.push_back(Term::abs(fresh, b));
  }
  for (const auto& v : pool)
    extend_spine(Term::var(v), 1, budget, pool, fresh_counter, out);
}

}  // namespace detail

inline std::vector<Term> enumerate_inhabitants(
    const std::vector<Judgment>& judgments, std::size_t size_bound) {
  if (judgments.empty())
    throw std::invalid_argument("enumerate_inhabitants: empty judgment list");
  std::vector<std::string> pool;
  for (const auto& [name, type] : judgments.front().ctx.bindings()) {
    (void)type;
    bool everywhere = true;
    for (const auto& j : judgments)
      everywhere = everywhere && j.ctx.binds(name);
    if (everywhere) pool.push_back(name);
  }
  std::vector<Term> candidates;
  detail::enumerate_normal(size_bound, pool, 0, candidates);
  std::vector<Term> out;
  for (const auto& t : candidates) {
    if (check_multi(judgments, t)) out.push_back(t);
  }
  std::stable_sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    auto na = a.node_count(), nb = b.node_count();
    return na != nb ? na < nb : print_term(a) < print_term(b);
  });
  return out;
}

}  // namespace inhab
