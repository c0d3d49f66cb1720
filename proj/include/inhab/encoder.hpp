// Builds the reduction types from a machine or rewriting system: the
// terminal/transition/expansion/initialization types and the single closed
// goal type tau_star whose inhabitants correspond to accepting runs
// (respectively rewrite derivations), plus the per-cell context families
// used by the checker and the proof search.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "inhab/checker.hpp"
#include "inhab/machines.hpp"
#include "inhab/types.hpp"

namespace inhab {

struct EncodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EncodingKind { TuringMachine, SemiThue };

struct EncodingBundle {
  EncodingKind kind = EncodingKind::TuringMachine;
  Type tau_star;
  Type sigma_0;       // initialization
  Type sigma_star;    // tape/word expansion
  Type sigma_final;   // sigma_f (TM) or sigma_1 (SSTS)
  std::vector<Type> sigma_t;             // one per transition/rule, in order
  std::vector<std::string> transition_order;  // human-readable labels
  std::set<std::string> atom_universe;

  // Binder names, in tau_star argument order.
  std::string var_0 = "x_0";
  std::string var_star = "x_s";
  std::string var_final;                  // "x_f" or "x_1"
  std::vector<std::string> var_t;         // transition variables

  // The marks the goal of tau_star assigns to y_1 in the three columns.
  Type goal() const {
    Type first = kind == EncodingKind::TuringMachine
                     ? Type::atom(kMarkFirst)
                     : Type::atom(kMarkInterior);
    return Type::inter({Type::arrow(Type::atom(kMarkLeft), first),
                        Type::arrow(Type::atom(kMarkRight),
                                    Type::atom(kMarkSecondLast)),
                        Type::arrow(Type::atom(kMarkOther),
                                    Type::atom(kMarkLast))});
  }
};

namespace detail {

inline Type arrow_chain(const std::vector<Type>& args, const Type& tail) {
  Type t = tail;
  for (auto it = args.rbegin(); it != args.rend(); ++it)
    t = Type::arrow(*it, t);
  return t;
}

inline std::vector<std::string> transition_var_names(std::size_t k) {
  std::vector<std::string> names;
  if (k == 1) {
    names.push_back("x_t");
  } else {
    for (std::size_t i = 0; i < k; ++i)
      names.push_back("x_t" + std::to_string(i + 1));
  }
  return names;
}

}  // namespace detail

// sigma_f = /\_{c in Sigma} <qf,c>  &  /\_{c in Sigma} c
inline Type encode_sigma_f(const TMSpec& spec) {
  std::vector<Type> members;
  for (const auto& c : spec.symbols)
    members.push_back(Type::atom(state_symbol_atom(spec.final_state, c)));
  for (const auto& c : spec.symbols) members.push_back(Type::atom(c));
  return Type::inter(members);
}

// For t = ((q,c) -> (q',c',+1)):
//   /\_a (dot -> a -> a) & (l -> c' -> <q,c>) & /\_a (r -> <q',a> -> a)
// and the l/r-swapped form for -1.
inline Type encode_sigma_t(const TMSpec& spec, const Transition& t) {
  Type l = Type::atom(kMarkLeft);
  Type r = Type::atom(kMarkRight);
  Type dot = Type::atom(kMarkOther);
  std::vector<Type> members;
  for (const auto& a : spec.symbols) {
    Type at = Type::atom(a);
    members.push_back(Type::arrow(dot, Type::arrow(at, at)));
  }
  Type source_pair = Type::atom(state_symbol_atom(t.state, t.read));
  Type write = Type::atom(t.write);
  const Type& toward = t.move > 0 ? l : r;   // mark seen from the old cell
  const Type& behind = t.move > 0 ? r : l;   // mark seen from the new cell
  members.push_back(Type::arrow(toward, Type::arrow(write, source_pair)));
  for (const auto& a : spec.symbols) {
    Type at = Type::atom(a);
    members.push_back(Type::arrow(
        behind, Type::arrow(Type::atom(state_symbol_atom(t.next, a)), at)));
  }
  return Type::inter(members);
}

// sigma_* = ((dot->circ)->circ) & ((dot->star)->star)
//         & ((l->star)->hash) & ((r->hash)&(dot->dollar) -> dollar)
inline Type encode_sigma_star_tm(const TMSpec&) {
  Type l = Type::atom(kMarkLeft);
  Type r = Type::atom(kMarkRight);
  Type dot = Type::atom(kMarkOther);
  Type circ = Type::atom(kMarkFirst);
  Type star = Type::atom(kMarkInterior);
  Type hash = Type::atom(kMarkSecondLast);
  Type dollar = Type::atom(kMarkLast);
  return Type::inter({Type::arrow(Type::arrow(dot, circ), circ),
                      Type::arrow(Type::arrow(dot, star), star),
                      Type::arrow(Type::arrow(l, star), hash),
                      Type::arrow(Type::inter(Type::arrow(r, hash),
                                              Type::arrow(dot, dollar)),
                                  dollar)});
}

// sigma_0 = ((dot-><q0,_>)->circ) & ((dot->_)->star)
//         & ((l->_)->hash) & ((r->_)->dollar)
inline Type encode_sigma_0_tm(const TMSpec& spec) {
  Type l = Type::atom(kMarkLeft);
  Type r = Type::atom(kMarkRight);
  Type dot = Type::atom(kMarkOther);
  Type blank = Type::atom(kBlank);
  Type q0_blank = Type::atom(state_symbol_atom(spec.initial, kBlank));
  return Type::inter(
      {Type::arrow(Type::arrow(dot, q0_blank), Type::atom(kMarkFirst)),
       Type::arrow(Type::arrow(dot, blank), Type::atom(kMarkInterior)),
       Type::arrow(Type::arrow(l, blank), Type::atom(kMarkSecondLast)),
       Type::arrow(Type::arrow(r, blank), Type::atom(kMarkLast))});
}

// Transitions in a fixed order (sorted by source state, then read symbol);
// any fixed order yields an equivalent tau_star, but determinism needs one.
inline std::vector<Transition> ordered_transitions(const TMSpec& spec) {
  std::vector<Transition> ts = spec.transitions;
  std::sort(ts.begin(), ts.end(), [](const Transition& a, const Transition& b) {
    return std::tie(a.state, a.read) < std::tie(b.state, b.read);
  });
  return ts;
}

// tau_star = sigma_0 -> sigma_* -> sigma_f -> sigma_t1 -> ... -> sigma_tk
//            -> (l->circ) & (r->hash) & (dot->dollar)
inline EncodingBundle encode_tau_star_tm(const TMSpec& spec) {
  spec.validate();
  EncodingBundle b;
  b.kind = EncodingKind::TuringMachine;
  b.sigma_0 = encode_sigma_0_tm(spec);
  b.sigma_star = encode_sigma_star_tm(spec);
  b.sigma_final = encode_sigma_f(spec);
  b.var_final = "x_f";
  auto ts = ordered_transitions(spec);
  for (const auto& t : ts) {
    b.sigma_t.push_back(encode_sigma_t(spec, t));
    b.transition_order.push_back(t.label());
  }
  b.var_t = detail::transition_var_names(ts.size());
  std::vector<Type> args{b.sigma_0, b.sigma_star, b.sigma_final};
  for (const auto& s : b.sigma_t) args.push_back(s);
  b.tau_star = detail::arrow_chain(args, b.goal());
  for (const auto& s : spec.symbols) b.atom_universe.insert(s);
  for (const auto& m : reserved_marks()) b.atom_universe.insert(m);
  for (const auto& q : spec.states) {
    for (const auto& s : spec.symbols)
      b.atom_universe.insert(state_symbol_atom(q, s));
  }
  return b;
}

// SSTS variant:
//   sigma_*   = ((dot->star)->star) & ((l->star)->hash)
//             & ((r->hash)&(dot->dollar) -> dollar)
//   sigma_0   = ((dot->0)->star) & ((l->0)->hash) & ((r->0)->dollar)
//   sigma_1   = 1
//   sigma_rule = (l->c->a) & (r->d->b) & /\_{e in Sigma} (dot->e->e)
//   tau_star  = sigma_0 -> sigma_* -> sigma_1 -> rules... ->
//               (l->star) & (r->hash) & (dot->dollar)
inline EncodingBundle encode_ssts(const SSTS& R) {
  R.validate();
  EncodingBundle b;
  b.kind = EncodingKind::SemiThue;
  Type l = Type::atom(kMarkLeft);
  Type r = Type::atom(kMarkRight);
  Type dot = Type::atom(kMarkOther);
  Type star = Type::atom(kMarkInterior);
  Type hash = Type::atom(kMarkSecondLast);
  Type dollar = Type::atom(kMarkLast);
  Type zero = Type::atom("0");
  b.sigma_star = Type::inter(
      {Type::arrow(Type::arrow(dot, star), star),
       Type::arrow(Type::arrow(l, star), hash),
       Type::arrow(Type::inter(Type::arrow(r, hash), Type::arrow(dot, dollar)),
                   dollar)});
  b.sigma_0 = Type::inter({Type::arrow(Type::arrow(dot, zero), star),
                           Type::arrow(Type::arrow(l, zero), hash),
                           Type::arrow(Type::arrow(r, zero), dollar)});
  b.sigma_final = Type::atom("1");
  b.var_final = "x_1";
  std::vector<SstsRule> rules = R.rules;
  std::sort(rules.begin(), rules.end());
  for (const auto& rule : rules) {
    std::vector<Type> members;
    members.push_back(
        Type::arrow(l, Type::arrow(Type::atom(rule.c), Type::atom(rule.a))));
    members.push_back(
        Type::arrow(r, Type::arrow(Type::atom(rule.d), Type::atom(rule.b))));
    for (const auto& e : R.alphabet) {
      Type et = Type::atom(e);
      members.push_back(Type::arrow(dot, Type::arrow(et, et)));
    }
    b.sigma_t.push_back(Type::inter(members));
    b.transition_order.push_back(rule.label());
  }
  b.var_t = detail::transition_var_names(rules.size());
  std::vector<Type> args{b.sigma_0, b.sigma_star, b.sigma_final};
  for (const auto& s : b.sigma_t) args.push_back(s);
  b.tau_star = detail::arrow_chain(args, b.goal());
  for (const auto& s : R.alphabet) b.atom_universe.insert(s);
  b.atom_universe.insert(kMarkLeft);
  b.atom_universe.insert(kMarkRight);
  b.atom_universe.insert(kMarkOther);
  b.atom_universe.insert(kMarkInterior);
  b.atom_universe.insert(kMarkSecondLast);
  b.atom_universe.insert(kMarkLast);
  return b;
}

inline std::string y_var(int i) { return "y_" + std::to_string(i); }

// The n per-cell contexts: the shared transition/terminal bindings plus the
// neighbor marks, (y_i : l) in Gamma_i and (y_i : r) in Gamma_{i+1}, all
// other y_j marked dot. With include_expansion the expansion and
// initialization variables are bound as well.
inline std::vector<Context> build_contexts(const EncodingBundle& b, int n,
                                           bool include_expansion = false) {
  if (n < 2) throw EncodeError("context family needs width >= 2");
  std::map<std::string, Type> base;
  base[b.var_final] = b.sigma_final;
  for (std::size_t i = 0; i < b.sigma_t.size(); ++i)
    base[b.var_t[i]] = b.sigma_t[i];
  if (include_expansion) {
    base[b.var_0] = b.sigma_0;
    base[b.var_star] = b.sigma_star;
  }
  std::vector<Context> out;
  for (int i = 1; i <= n; ++i) {
    auto bindings = base;
    for (int j = 1; j <= n - 1; ++j) {
      const char* mark = kMarkOther;
      if (j == i) mark = kMarkLeft;  // unreachable for i = n: j stops at n-1
      if (j == i - 1) mark = kMarkRight;
      bindings[y_var(j)] = Type::atom(mark);
    }
    out.push_back(Context(std::move(bindings)));
  }
  return out;
}

// The judgment family of the inner equivalence for a starting configuration:
// Gamma_p |- e : <q, s_p> and Gamma_i |- e : s_i elsewhere.
inline std::vector<Judgment> inner_judgments_tm(const EncodingBundle& b,
                                                const Config& start,
                                                bool include_expansion = false) {
  int n = static_cast<int>(start.tape.size());
  auto contexts = build_contexts(b, n, include_expansion);
  std::vector<Judgment> out;
  for (int i = 1; i <= n; ++i) {
    const std::string& sym = start.tape[static_cast<std::size_t>(i - 1)];
    Type goal = i == start.pos
                    ? Type::atom(state_symbol_atom(start.state, sym))
                    : Type::atom(sym);
    out.push_back(Judgment{contexts[static_cast<std::size_t>(i - 1)], goal});
  }
  return out;
}

// SSTS analogue: every column starts at 0.
inline std::vector<Judgment> inner_judgments_ssts(const EncodingBundle& b,
                                                  int n,
                                                  bool include_expansion = false) {
  auto contexts = build_contexts(b, n, include_expansion);
  std::vector<Judgment> out;
  for (int i = 0; i < n; ++i)
    out.push_back(Judgment{contexts[static_cast<std::size_t>(i)],
                           Type::atom("0")});
  return out;
}

// Everything in an emitted bundle must stay inside the atom universe.
inline std::set<std::string> atoms_of(const Type& t) {
  std::set<std::string> out;
  switch (t.kind()) {
    case Type::Kind::Atom:
      out.insert(t.atom_name());
      break;
    case Type::Kind::Arrow: {
      auto s = atoms_of(t.source());
      out.insert(s.begin(), s.end());
      auto g = atoms_of(t.target());
      out.insert(g.begin(), g.end());
      break;
    }
    case Type::Kind::Inter:
      for (const auto& m : t.members()) {
        auto s = atoms_of(m);
        out.insert(s.begin(), s.end());
      }
      break;
  }
  return out;
}

}  // namespace inhab
