// Derivability of Gamma |- M : tau for beta-normal M under the rules Ax,
// ->I, ->E, &I, &E. The strategy is goal-directed: intersection goals are
// split (&I), abstractions consume arrow goals (->I), and spines are checked
// by walking a selection path through the head's type, interleaving member
// selection (&E) with argument applications (->E). Arrow goals on spines are
// matched against the remaining chain, so partial applications type-check.
//
// Successful checks can produce a full derivation tree; trees serialize to a
// replayable transcript (one `RULE  ctx-hash  term  goal` line per rule, two
// leading spaces per tree level).
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "inhab/terms.hpp"
#include "inhab/types.hpp"

namespace inhab {

class Context {
 public:
  Context() = default;
  explicit Context(std::map<std::string, Type> bindings)
      : bindings_(std::move(bindings)) {}

  // Inner binders shadow outer bindings of the same name.
  Context extended(const std::string& name, const Type& type) const {
    Context out = *this;
    out.bindings_[name] = type;
    return out;
  }

  const Type* lookup(const std::string& name) const {
    auto it = bindings_.find(name);
    return it == bindings_.end() ? nullptr : &it->second;
  }
  bool binds(const std::string& name) const {
    return bindings_.count(name) != 0;
  }
  const std::map<std::string, Type>& bindings() const { return bindings_; }
  std::size_t size() const { return bindings_.size(); }

  std::string render() const {
    std::string out;
    for (const auto& [name, type] : bindings_) {
      out += name;
      out += ":";
      out += print_type(type);
      out += ";";
    }
    return out;
  }

  friend bool operator==(const Context& a, const Context& b) {
    if (a.bindings_.size() != b.bindings_.size()) return false;
    auto ia = a.bindings_.begin();
    auto ib = b.bindings_.begin();
    for (; ia != a.bindings_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || ia->second != ib->second) return false;
    }
    return true;
  }

 private:
  std::map<std::string, Type> bindings_;
};

struct Judgment {
  Context ctx;
  Type goal;
};

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string context_hash(const Context& ctx) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(ctx.render())));
  return std::string(buf);
}

enum class Rule { Ax, ArrowI, ArrowE, InterI, InterE };

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Ax: return "Ax";
    case Rule::ArrowI: return "->I";
    case Rule::ArrowE: return "->E";
    case Rule::InterI: return "&I";
    case Rule::InterE: return "&E";
  }
  return "?";
}

inline std::optional<Rule> rule_from_name(std::string_view s) {
  if (s == "Ax") return Rule::Ax;
  if (s == "->I") return Rule::ArrowI;
  if (s == "->E") return Rule::ArrowE;
  if (s == "&I") return Rule::InterI;
  if (s == "&E") return Rule::InterE;
  return std::nullopt;
}

struct Derivation {
  Rule rule = Rule::Ax;
  Context ctx;
  Term subject;
  Type conclusion;
  std::vector<Derivation> premises;
};

namespace detail {

inline std::optional<Derivation> check_rec(const Context& ctx, const Term& m,
                                           const Type& goal);

// Walks the remaining applications of a spine against the current type of
// the already-typed prefix: select an intersection member (&E), consume one
// argument (->E), or stop when the remaining type equals the goal.
inline std::optional<Derivation> fit_spine(const Context& ctx,
                                           const Derivation& prefix,
                                           const Type& cur,
                                           const std::vector<Term>& args,
                                           std::size_t next,
                                           const Type& goal) {
  if (next == args.size() && cur == goal) return prefix;
  if (cur.is_inter()) {
    for (const auto& member : cur.members()) {
      Derivation sel{Rule::InterE, ctx, prefix.subject, member, {prefix}};
      if (auto d = fit_spine(ctx, sel, member, args, next, goal)) return d;
    }
    return std::nullopt;
  }
  if (cur.is_arrow() && next < args.size()) {
    auto arg_d = check_rec(ctx, args[next], cur.source());
    if (!arg_d) return std::nullopt;
    Term applied = Term::app(prefix.subject, args[next]);
    Derivation app{Rule::ArrowE, ctx, applied, cur.target(),
                   {prefix, *arg_d}};
    return fit_spine(ctx, app, cur.target(), args, next + 1, goal);
  }
  return std::nullopt;
}

inline std::optional<Derivation> check_rec(const Context& ctx, const Term& m,
                                           const Type& goal) {
  if (goal.is_inter()) {
    Derivation d{Rule::InterI, ctx, m, goal, {}};
    for (const auto& member : goal.members()) {
      auto p = check_rec(ctx, m, member);
      if (!p) return std::nullopt;
      d.premises.push_back(std::move(*p));
    }
    return d;
  }
  if (m.is_abs()) {
    if (!goal.is_arrow()) return std::nullopt;
    auto body = check_rec(ctx.extended(m.binder(), goal.source()), m.body(),
                          goal.target());
    if (!body) return std::nullopt;
    return Derivation{Rule::ArrowI, ctx, m, goal, {std::move(*body)}};
  }
  Spine spine = spine_decompose(m);
  const Type* head_type = ctx.lookup(spine.head);
  if (!head_type) return std::nullopt;  // unknown free variable: not derivable
  Derivation ax{Rule::Ax, ctx, Term::var(spine.head), *head_type, {}};
  return fit_spine(ctx, ax, *head_type, spine.arguments, 0, goal);
}

}  // namespace detail

inline std::optional<Derivation> check_with_transcript(const Context& ctx,
                                                       const Term& m,
                                                       const Type& goal) {
  if (!is_beta_normal(m))
    throw std::invalid_argument("check: term is not in beta normal form");
  return detail::check_rec(ctx, m, goal);
}

inline bool check(const Context& ctx, const Term& m, const Type& goal) {
  return check_with_transcript(ctx, m, goal).has_value();
}

// One shared term must satisfy every judgment simultaneously. Vacuously true
// on the empty list.
inline bool check_multi(const std::vector<Judgment>& judgments, const Term& m) {
  for (const auto& j : judgments) {
    if (!check(j.ctx, m, j.goal)) return false;
  }
  return true;
}

// --- derivation validation and transcripts ------------------------------

// Validates one derivation tree rule-by-rule against the typing rules.
inline bool validate_derivation(const Derivation& d) {
  switch (d.rule) {
    case Rule::Ax: {
      if (!d.premises.empty() || !d.subject.is_var()) return false;
      const Type* bound = d.ctx.lookup(d.subject.var_name());
      return bound && *bound == d.conclusion;
    }
    case Rule::ArrowI: {
      if (d.premises.size() != 1 || !d.subject.is_abs() ||
          !d.conclusion.is_arrow())
        return false;
      const Derivation& p = d.premises.front();
      if (!(p.ctx == d.ctx.extended(d.subject.binder(), d.conclusion.source())))
        return false;
      if (!alpha_equal(p.subject, d.subject.body())) return false;
      if (p.conclusion != d.conclusion.target()) return false;
      return validate_derivation(p);
    }
    case Rule::ArrowE: {
      if (d.premises.size() != 2 || !d.subject.is_app()) return false;
      const Derivation& pf = d.premises[0];
      const Derivation& pa = d.premises[1];
      if (!(pf.ctx == d.ctx) || !(pa.ctx == d.ctx)) return false;
      if (!pf.conclusion.is_arrow()) return false;
      if (pf.conclusion.source() != pa.conclusion) return false;
      if (pf.conclusion.target() != d.conclusion) return false;
      if (!alpha_equal(pf.subject, d.subject.fn())) return false;
      if (!alpha_equal(pa.subject, d.subject.arg())) return false;
      return validate_derivation(pf) && validate_derivation(pa);
    }
    case Rule::InterI: {
      if (!d.conclusion.is_inter()) return false;
      auto members = d.conclusion.members();
      if (d.premises.size() != members.size()) return false;
      for (std::size_t i = 0; i < members.size(); ++i) {
        const Derivation& p = d.premises[i];
        if (!(p.ctx == d.ctx) || p.conclusion != members[i]) return false;
        if (!alpha_equal(p.subject, d.subject)) return false;
        if (!validate_derivation(p)) return false;
      }
      return true;
    }
    case Rule::InterE: {
      if (d.premises.size() != 1) return false;
      const Derivation& p = d.premises.front();
      if (!(p.ctx == d.ctx) || !alpha_equal(p.subject, d.subject)) return false;
      if (!p.conclusion.is_inter()) return false;
      // The conclusion must be a member set of the premise's intersection.
      auto have = p.conclusion.members();
      for (const auto& want : d.conclusion.split_members()) {
        bool found = false;
        for (const auto& h : have) found = found || h == want;
        if (!found) return false;
      }
      return validate_derivation(p);
    }
  }
  return false;
}

namespace detail {
inline void transcript_rec(const Derivation& d, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += rule_name(d.rule);
  out += "  ";
  out += context_hash(d.ctx);
  out += "  ";
  out += print_term(d.subject);
  out += "  ";
  out += print_type(d.conclusion);
  out += '\n';
  for (const auto& p : d.premises) transcript_rec(p, depth + 1, out);
}
}  // namespace detail

inline std::string transcript_text(const Derivation& d) {
  std::string out;
  detail::transcript_rec(d, 0, out);
  return out;
}

namespace detail {

struct TranscriptLine {
  int depth = 0;
  Rule rule = Rule::Ax;
  std::string ctx_hash;
  Term subject;
  Type goal;
};

inline std::vector<TranscriptLine> parse_transcript(const std::string& text) {
  std::vector<TranscriptLine> lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (raw.empty()) continue;
    std::size_t indent = 0;
    while (indent < raw.size() && raw[indent] == ' ') ++indent;
    if (indent % 2 != 0) throw ParseError("odd transcript indent", lineno, 1);
    std::string rest = raw.substr(indent);
    auto split2 = [&](std::string& s) {
      auto pos = s.find("  ");
      if (pos == std::string::npos)
        throw ParseError("malformed transcript line", lineno, 1);
      std::string first = s.substr(0, pos);
      s = s.substr(pos + 2);
      return first;
    };
    TranscriptLine tl;
    tl.depth = static_cast<int>(indent / 2);
    std::string rn = split2(rest);
    auto rule = rule_from_name(rn);
    if (!rule) throw ParseError("unknown rule '" + rn + "'", lineno, 1);
    tl.rule = *rule;
    tl.ctx_hash = split2(rest);
    std::string term_text = split2(rest);
    tl.subject = parse_term(term_text);
    tl.goal = parse_type(rest);
    lines.push_back(std::move(tl));
  }
  return lines;
}

// Rebuilds the derivation tree from transcript lines; contexts are
// reconstructed top-down (->I extends by the abstraction binder) and each
// recorded hash is checked against the rebuilt context.
inline Derivation rebuild_derivation(const std::vector<TranscriptLine>& lines,
                                     std::size_t& idx, int depth,
                                     const Context& ctx) {
  if (idx >= lines.size() || lines[idx].depth != depth)
    throw std::runtime_error("transcript: premise structure mismatch");
  const TranscriptLine& tl = lines[idx];
  ++idx;
  if (context_hash(ctx) != tl.ctx_hash)
    throw std::runtime_error("transcript: context hash mismatch");
  Derivation d{tl.rule, ctx, tl.subject, tl.goal, {}};
  std::size_t n_premises = 0;
  switch (tl.rule) {
    case Rule::Ax: n_premises = 0; break;
    case Rule::ArrowI: case Rule::InterE: n_premises = 1; break;
    case Rule::ArrowE: n_premises = 2; break;
    case Rule::InterI:
      if (!tl.goal.is_inter())
        throw std::runtime_error("transcript: &I goal is not an intersection");
      n_premises = tl.goal.members().size();
      break;
  }
  for (std::size_t i = 0; i < n_premises; ++i) {
    Context premise_ctx = ctx;
    if (tl.rule == Rule::ArrowI) {
      if (!tl.subject.is_abs() || !tl.goal.is_arrow())
        throw std::runtime_error("transcript: malformed ->I node");
      premise_ctx = ctx.extended(tl.subject.binder(), tl.goal.source());
    }
    d.premises.push_back(
        rebuild_derivation(lines, idx, depth + 1, premise_ctx));
  }
  return d;
}

}  // namespace detail

// Re-validates a serialized transcript from text alone plus the root
// context. Returns the rebuilt derivation on success; throws on structural
// damage; returns nullopt if the rebuilt tree fails rule validation.
inline std::optional<Derivation> replay_transcript(const std::string& text,
                                                   const Context& root_ctx) {
  auto lines = detail::parse_transcript(text);
  if (lines.empty()) throw std::runtime_error("empty transcript");
  std::size_t idx = 0;
  Derivation d = detail::rebuild_derivation(lines, idx, 0, root_ctx);
  if (idx != lines.size())
    throw std::runtime_error("transcript: trailing lines");
  if (!validate_derivation(d)) return std::nullopt;
  return d;
}

}  // namespace inhab
