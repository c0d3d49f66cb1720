// Lambda terms, beta-normal-form recognition, spine decomposition, and the
// term parser/printer. Terms are immutable and compared up to alpha-renaming.
#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "inhab/types.hpp"

namespace inhab {

class Term {
 public:
  enum class Kind { Var, Abs, App };

  Term() = default;

  static Term var(std::string name) {
    if (name.empty()) throw std::invalid_argument("empty variable name");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->name = std::move(name);
    return Term(std::move(n));
  }
  static Term abs(std::string binder, Term body) {
    if (binder.empty()) throw std::invalid_argument("empty binder name");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Abs;
    n->name = std::move(binder);
    n->left = body.node_;
    return Term(std::move(n));
  }
  static Term app(Term fn, Term arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::App;
    n->left = fn.node_;
    n->right = arg.node_;
    return Term(std::move(n));
  }

  Kind kind() const {
    if (!node_) throw std::logic_error("kind() on an empty term");
    return node_->kind;
  }
  bool is_var() const { return node_ && node_->kind == Kind::Var; }
  bool is_abs() const { return node_ && node_->kind == Kind::Abs; }
  bool is_app() const { return node_ && node_->kind == Kind::App; }
  bool empty() const { return !node_; }

  const std::string& var_name() const {
    require(Kind::Var);
    return node_->name;
  }
  const std::string& binder() const {
    require(Kind::Abs);
    return node_->name;
  }
  Term body() const {
    require(Kind::Abs);
    return Term(node_->left);
  }
  Term fn() const {
    require(Kind::App);
    return Term(node_->left);
  }
  Term arg() const {
    require(Kind::App);
    return Term(node_->right);
  }

  std::size_t node_count() const { return count(node_); }

 private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  struct Node {
    Kind kind = Kind::Var;
    std::string name;     // Var name or Abs binder
    NodePtr left, right;  // Abs body in left; App fn/arg
  };
  explicit Term(NodePtr n) : node_(std::move(n)) {}
  void require(Kind k) const {
    if (!node_ || node_->kind != k) throw std::logic_error("term kind mismatch");
  }
  static std::size_t count(const NodePtr& n) {
    if (!n) return 0;
    return 1 + count(n->left) + count(n->right);
  }

  NodePtr node_;
};

namespace detail {
// Alpha comparison with binder-depth maps on both sides. A bound variable
// matches a bound variable at the same depth; free variables match by name.
inline bool alpha_eq_rec(const Term& a, const Term& b,
                         std::map<std::string, int>& da,
                         std::map<std::string, int>& db, int depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      auto ia = da.find(a.var_name());
      auto ib = db.find(b.var_name());
      if ((ia == da.end()) != (ib == db.end())) return false;
      if (ia == da.end()) return a.var_name() == b.var_name();
      return ia->second == ib->second;
    }
    case Term::Kind::Abs: {
      auto olda = da.find(a.binder()) == da.end()
                      ? std::pair<bool, int>{false, 0}
                      : std::pair<bool, int>{true, da[a.binder()]};
      auto oldb = db.find(b.binder()) == db.end()
                      ? std::pair<bool, int>{false, 0}
                      : std::pair<bool, int>{true, db[b.binder()]};
      da[a.binder()] = depth;
      db[b.binder()] = depth;
      bool ok = alpha_eq_rec(a.body(), b.body(), da, db, depth + 1);
      if (olda.first)
        da[a.binder()] = olda.second;
      else
        da.erase(a.binder());
      if (oldb.first)
        db[b.binder()] = oldb.second;
      else
        db.erase(b.binder());
      return ok;
    }
    case Term::Kind::App:
      return alpha_eq_rec(a.fn(), b.fn(), da, db, depth) &&
             alpha_eq_rec(a.arg(), b.arg(), da, db, depth);
  }
  return false;
}
}  // namespace detail

inline bool alpha_equal(const Term& a, const Term& b) {
  std::map<std::string, int> da, db;
  return detail::alpha_eq_rec(a, b, da, db, 0);
}

// A term is beta-normal iff it contains no subterm (\x.B) A.
inline bool is_beta_normal(const Term& m) {
  switch (m.kind()) {
    case Term::Kind::Var:
      return true;
    case Term::Kind::Abs:
      return is_beta_normal(m.body());
    case Term::Kind::App:
      return !m.fn().is_abs() && is_beta_normal(m.fn()) &&
             is_beta_normal(m.arg());
  }
  return false;
}

struct Spine {
  std::string head;
  std::vector<Term> arguments;
};

// Decomposes a non-abstraction normal term into head variable and argument
// list. Abstractions must be handled by the caller.
inline Spine spine_decompose(const Term& m) {
  if (m.is_abs())
    throw std::invalid_argument("spine_decompose: term is an abstraction");
  std::vector<Term> args;
  Term cur = m;
  while (cur.is_app()) {
    args.push_back(cur.arg());
    cur = cur.fn();
  }
  if (!cur.is_var())
    throw std::invalid_argument("spine_decompose: head is not a variable");
  std::reverse(args.begin(), args.end());
  return Spine{cur.var_name(), std::move(args)};
}

// --- concrete syntax ---------------------------------------------------
//
//   term ::= '\' name '.' term | app
//   app  ::= atomterm+                  left-associative
//   atomterm ::= name | '(' term ')'

namespace detail {

inline Term parse_term_expr(Cursor& cur);

inline bool at_atomterm(Cursor& cur) {
  char c = cur.peek();
  return c == '(' || atom_start(c);
}

inline Term parse_atomterm(Cursor& cur) {
  if (cur.try_consume("(")) {
    Term t = parse_term_expr(cur);
    cur.expect(")", "')'");
    return t;
  }
  return Term::var(cur.ident("variable name"));
}

inline Term parse_term_expr(Cursor& cur) {
  if (cur.try_consume("\\")) {
    std::string binder = cur.ident("binder name");
    cur.expect(".", "'.' after binder");
    return Term::abs(std::move(binder), parse_term_expr(cur));
  }
  Term t = parse_atomterm(cur);
  while (at_atomterm(cur)) t = Term::app(t, parse_atomterm(cur));
  return t;
}

}  // namespace detail

inline Term parse_term(std::string_view text) {
  detail::Cursor cur(text);
  Term t = detail::parse_term_expr(cur);
  if (!cur.eof()) cur.fail("trailing input after term");
  return t;
}

namespace detail {
inline void print_term_rec(const Term& t, bool fn_pos, bool arg_pos,
                           std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out += t.var_name();
      return;
    case Term::Kind::Abs: {
      bool parens = fn_pos || arg_pos;
      if (parens) out += '(';
      out += '\\';
      out += t.binder();
      out += ". ";
      print_term_rec(t.body(), false, false, out);
      if (parens) out += ')';
      return;
    }
    case Term::Kind::App: {
      bool parens = arg_pos;
      if (parens) out += '(';
      print_term_rec(t.fn(), true, false, out);
      out += ' ';
      print_term_rec(t.arg(), false, true, out);
      if (parens) out += ')';
      return;
    }
  }
}
}  // namespace detail

inline std::string print_term(const Term& t) {
  std::string out;
  detail::print_term_rec(t, false, false, out);
  return out;
}

}  // namespace inhab
