// Deterministic Turing machines over a bounded tape window and simple
// semi-Thue systems (rules ab => cd), with exact per-width acceptance /
// reachability procedures and the line-based spec file formats.
#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "inhab/types.hpp"

namespace inhab {

struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
inline bool plain_ident(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!atom_start(c)) return false;  // identifier charset, '@' excluded
  }
  return true;
}
}  // namespace detail

struct Transition {
  std::string state, read;
  std::string next, write;
  int move = +1;  // +1 right, -1 left

  friend bool operator==(const Transition& a, const Transition& b) {
    return a.state == b.state && a.read == b.read && a.next == b.next &&
           a.write == b.write && a.move == b.move;
  }
  std::string label() const {
    return state + " " + read + " -> " + next + " " + write + " " +
           (move > 0 ? "R" : "L");
  }
};

struct TMSpec {
  std::vector<std::string> symbols;  // must contain the blank "_"
  std::vector<std::string> states;
  std::string initial;
  std::string final_state;
  std::vector<Transition> transitions;

  const Transition* find(const std::string& q, const std::string& c) const {
    for (const auto& t : transitions) {
      if (t.state == q && t.read == c) return &t;
    }
    return nullptr;
  }

  // delta must be total on (Q \ {qf}) x Sigma and undefined on qf.
  void validate() const {
    if (symbols.empty()) throw SpecError("no tape symbols");
    if (states.empty()) throw SpecError("no states");
    auto has = [](const std::vector<std::string>& v, const std::string& x) {
      return std::find(v.begin(), v.end(), x) != v.end();
    };
    if (!has(symbols, kBlank))
      throw SpecError("blank symbol '_' missing from symbols");
    if (!has(states, initial)) throw SpecError("initial state not in states");
    if (!has(states, final_state)) throw SpecError("final state not in states");
    for (const auto& s : symbols) {
      if (!detail::plain_ident(s))
        throw SpecError("bad symbol name '" + s + "'");
      for (const auto& m : reserved_marks()) {
        if (s == m)
          throw SpecError("reserved-symbol clash: tape symbol '" + s + "'");
      }
    }
    for (const auto& q : states) {
      if (!detail::plain_ident(q)) throw SpecError("bad state name '" + q + "'");
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& t : transitions) {
      if (!has(states, t.state) || !has(states, t.next))
        throw SpecError("transition uses unknown state: " + t.label());
      if (!has(symbols, t.read) || !has(symbols, t.write))
        throw SpecError("transition uses unknown symbol: " + t.label());
      if (t.state == final_state)
        throw SpecError("delta defined on the final state: " + t.label());
      if (!seen.insert({t.state, t.read}).second)
        throw SpecError("duplicate transition for (" + t.state + ", " + t.read +
                        ")");
    }
    for (const auto& q : states) {
      if (q == final_state) continue;
      for (const auto& c : symbols) {
        if (!find(q, c))
          throw SpecError("delta not total: missing (" + q + ", " + c + ")");
      }
    }
  }
};

struct Config {
  std::string state;
  int pos = 1;  // 1-based head position
  std::vector<std::string> tape;

  friend bool operator==(const Config& a, const Config& b) {
    return a.state == b.state && a.pos == b.pos && a.tape == b.tape;
  }
  friend bool operator<(const Config& a, const Config& b) {
    return std::tie(a.state, a.pos, a.tape) < std::tie(b.state, b.pos, b.tape);
  }
};

inline std::string print_word(const std::vector<std::string>& word) {
  bool single = true;
  for (const auto& s : word) single = single && s.size() == 1;
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!single && i > 0) out += ' ';
    out += word[i];
  }
  return out;
}

inline std::string print_config(const Config& c) {
  return "(" + c.state + ", " + std::to_string(c.pos) + ", " +
         print_word(c.tape) + ")";
}

inline Config initial_config(const TMSpec& spec, int width) {
  if (width < 1) throw SpecError("tape width must be >= 1");
  return Config{spec.initial, 1,
                std::vector<std::string>(static_cast<std::size_t>(width),
                                         kBlank)};
}

struct Halted {};
struct OutOfBounds {};
using StepResult = std::variant<Config, Halted, OutOfBounds>;

inline StepResult tm_step(const TMSpec& spec, const Config& c) {
  if (c.state == spec.final_state) return Halted{};
  if (c.pos < 1 || c.pos > static_cast<int>(c.tape.size()))
    throw SpecError("head position out of range");
  const Transition* t = spec.find(c.state, c.tape[c.pos - 1]);
  if (!t)
    throw SpecError("delta undefined for (" + c.state + ", " +
                    c.tape[c.pos - 1] + ")");
  int next_pos = c.pos + t->move;
  if (next_pos < 1 || next_pos > static_cast<int>(c.tape.size()))
    return OutOfBounds{};
  Config out = c;
  out.tape[c.pos - 1] = t->write;
  out.pos = next_pos;
  out.state = t->next;
  return out;
}

struct Trace {
  std::vector<Config> configs;           // C_1 ... C_m, last state is final
  std::vector<Transition> steps;         // m-1 applied transitions
};

struct Rejected {};
struct BudgetExhausted {};
using RunResult = std::variant<Trace, Rejected, BudgetExhausted>;

// Exact per-width budget: number of distinct configurations |Q|*|Sigma|^n*n.
// A deterministic machine exceeding it has revisited a configuration and
// loops forever.
inline long long default_step_budget(const TMSpec& spec, int width) {
  long long budget = static_cast<long long>(spec.states.size()) * width;
  for (int i = 0; i < width; ++i) {
    budget *= static_cast<long long>(spec.symbols.size());
    if (budget > 100'000'000LL) return 100'000'000LL;
  }
  return budget;
}

inline RunResult tm_run(const TMSpec& spec, const Config& start,
                        long long max_steps) {
  Trace trace;
  trace.configs.push_back(start);
  Config cur = start;
  long long applied = 0;
  while (true) {
    StepResult r = tm_step(spec, cur);
    if (std::holds_alternative<Halted>(r)) return trace;
    if (std::holds_alternative<OutOfBounds>(r)) return Rejected{};
    if (applied == max_steps) return BudgetExhausted{};
    ++applied;
    trace.steps.push_back(*spec.find(cur.state, cur.tape[cur.pos - 1]));
    cur = std::get<Config>(r);
    trace.configs.push_back(cur);
  }
}

// A trace is well-formed iff every step replays through tm_step and the last
// configuration is accepting.
inline bool replay_trace(const TMSpec& spec, const Trace& trace) {
  if (trace.configs.empty()) return false;
  if (trace.steps.size() + 1 != trace.configs.size()) return false;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    StepResult r = tm_step(spec, trace.configs[i]);
    if (!std::holds_alternative<Config>(r)) return false;
    if (!(std::get<Config>(r) == trace.configs[i + 1])) return false;
    const Transition* t =
        spec.find(trace.configs[i].state, trace.configs[i].tape[trace.configs[i].pos - 1]);
    if (!t || !(*t == trace.steps[i])) return false;
  }
  return trace.configs.back().state == spec.final_state;
}

// --- simple semi-Thue systems -------------------------------------------

struct SstsRule {
  std::string a, b, c, d;  // ab => cd

  friend bool operator==(const SstsRule& x, const SstsRule& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator<(const SstsRule& x, const SstsRule& y) {
    return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
  }
  std::string label() const { return a + " " + b + " => " + c + " " + d; }
};

struct SSTS {
  std::vector<std::string> alphabet;  // must contain "0" and "1"
  std::vector<SstsRule> rules;

  void validate() const {
    auto has = [&](const std::string& x) {
      return std::find(alphabet.begin(), alphabet.end(), x) != alphabet.end();
    };
    if (!has("0") || !has("1"))
      throw SpecError("alphabet must contain 0 and 1");
    for (const auto& s : alphabet) {
      if (!detail::plain_ident(s))
        throw SpecError("bad alphabet symbol '" + s + "'");
      for (const auto& m : reserved_marks()) {
        if (s == m)
          throw SpecError("reserved-symbol clash: alphabet symbol '" + s + "'");
      }
    }
    for (const auto& r : rules) {
      if (!has(r.a) || !has(r.b) || !has(r.c) || !has(r.d))
        throw SpecError("rule uses unknown symbol: " + r.label());
    }
  }
};

struct InapplicableRule : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Word = std::vector<std::string>;

// Rewrites cells (pos, pos+1), 1-based. The cells must read exactly "ab".
inline Word ssts_step(const SSTS&, const Word& w, const SstsRule& rule,
                      int pos) {
  if (pos < 1 || pos + 1 > static_cast<int>(w.size()))
    throw InapplicableRule("rewrite position out of range");
  if (w[pos - 1] != rule.a || w[pos] != rule.b)
    throw InapplicableRule("cells read '" + w[pos - 1] + w[pos] +
                           "', rule needs '" + rule.a + rule.b + "'");
  Word out = w;
  out[pos - 1] = rule.c;
  out[pos] = rule.d;
  return out;
}

struct DerivationStep {
  SstsRule rule;
  int pos = 1;
  Word word;  // word after the step
};

struct SstsDerivation {
  Word start;
  std::vector<DerivationStep> steps;

  const Word& final_word() const {
    return steps.empty() ? start : steps.back().word;
  }
};

inline bool replay_derivation(const SSTS& R, const SstsDerivation& d) {
  Word cur = d.start;
  for (const auto& step : d.steps) {
    try {
      cur = ssts_step(R, cur, step.rule, step.pos);
    } catch (const InapplicableRule&) {
      return false;
    }
    if (cur != step.word) return false;
  }
  return true;
}

inline Word uniform_word(const std::string& sym, int n) {
  return Word(static_cast<std::size_t>(n), sym);
}

// Breadth-first search over length-n words from 0^n to 1^n; the reachable
// set is finite, so per-n answers are exact unless the state bound is hit.
// Returns a shortest derivation (ties broken by rule order, then position).
inline std::optional<SstsDerivation> ssts_reach(const SSTS& R, int n,
                                               long long state_bound) {
  if (n < 1) throw SpecError("word length must be >= 1");
  std::vector<SstsRule> rules = R.rules;
  std::sort(rules.begin(), rules.end());
  Word start = uniform_word("0", n);
  Word target = uniform_word("1", n);
  std::map<Word, std::pair<Word, DerivationStep>> parent;
  std::deque<Word> queue{start};
  std::set<Word> seen{start};
  long long expanded = 0;
  auto build = [&](Word w) {
    std::vector<DerivationStep> steps;
    while (!(w == start)) {
      auto it = parent.find(w);
      steps.push_back(it->second.second);
      w = it->second.first;
    }
    std::reverse(steps.begin(), steps.end());
    return SstsDerivation{start, std::move(steps)};
  };
  if (start == target) return SstsDerivation{start, {}};
  while (!queue.empty()) {
    if (++expanded > state_bound) return std::nullopt;
    Word w = queue.front();
    queue.pop_front();
    for (const auto& rule : rules) {
      for (int p = 1; p + 1 <= n; ++p) {
        if (w[p - 1] != rule.a || w[p] != rule.b) continue;
        Word next = ssts_step(R, w, rule, p);
        if (!seen.insert(next).second) continue;
        parent.emplace(next, std::make_pair(w, DerivationStep{rule, p, next}));
        if (next == target) return build(next);
        queue.push_back(next);
      }
    }
  }
  return std::nullopt;
}

inline long long default_state_bound(const SSTS& R, int n) {
  long long bound = 1;
  for (int i = 0; i < n; ++i) {
    bound *= static_cast<long long>(R.alphabet.size());
    if (bound > 10'000'000LL) return 10'000'000LL;
  }
  return bound;
}

// --- spec file formats ---------------------------------------------------
//
// TM file, line-based with '#' comments:
//   symbols: _ a b
//   states: q0 q1 qf
//   initial: q0
//   final: qf
//   delta: q c -> q' c' R|L
//
// SSTS file:
//   alphabet: 0 1 a
//   rule: a b => c d

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

struct SpecLine {
  std::size_t number;
  std::string key;
  std::vector<std::string> tokens;
};

inline std::vector<SpecLine> read_spec_lines(const std::string& text) {
  std::vector<SpecLine> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    auto toks = split_ws(raw);
    if (toks.empty()) continue;
    std::string key = toks.front();
    if (key.back() != ':')
      throw ParseError("expected 'key:' directive, got '" + key + "'", lineno,
                       1);
    key.pop_back();
    out.push_back(SpecLine{lineno, key,
                           std::vector<std::string>(toks.begin() + 1,
                                                    toks.end())});
  }
  return out;
}

}  // namespace detail

inline TMSpec parse_tm_spec(const std::string& text) {
  TMSpec spec;
  for (const auto& line : detail::read_spec_lines(text)) {
    if (line.key == "symbols") {
      spec.symbols = line.tokens;
    } else if (line.key == "states") {
      spec.states = line.tokens;
    } else if (line.key == "initial") {
      if (line.tokens.size() != 1)
        throw ParseError("initial: expects one state", line.number, 1);
      spec.initial = line.tokens[0];
    } else if (line.key == "final") {
      if (line.tokens.size() != 1)
        throw ParseError("final: expects one state", line.number, 1);
      spec.final_state = line.tokens[0];
    } else if (line.key == "delta") {
      // delta: q c -> q' c' R|L
      const auto& t = line.tokens;
      if (t.size() != 6 || t[2] != "->" || (t[5] != "R" && t[5] != "L"))
        throw ParseError("delta: expects 'q c -> q' c' R|L'", line.number, 1);
      spec.transitions.push_back(
          Transition{t[0], t[1], t[3], t[4], t[5] == "R" ? +1 : -1});
    } else {
      throw ParseError("unknown directive '" + line.key + "'", line.number, 1);
    }
  }
  spec.validate();
  return spec;
}

inline SSTS parse_ssts_spec(const std::string& text) {
  SSTS out;
  for (const auto& line : detail::read_spec_lines(text)) {
    if (line.key == "alphabet") {
      out.alphabet = line.tokens;
    } else if (line.key == "rule") {
      const auto& t = line.tokens;
      if (t.size() != 5 || t[2] != "=>")
        throw ParseError("rule: expects 'a b => c d'", line.number, 1);
      out.rules.push_back(SstsRule{t[0], t[1], t[3], t[4]});
    } else {
      throw ParseError("unknown directive '" + line.key + "'", line.number, 1);
    }
  }
  out.validate();
  return out;
}

}  // namespace inhab
