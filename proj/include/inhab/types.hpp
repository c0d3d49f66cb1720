// Intersection types in canonical form: atoms, arrows, and flattened,
// duplicate-free, ordered intersections (idempotent/commutative/associative
// by construction). Rank and order, arrow-component flattening, and a
// parser/printer for the ASCII type syntax.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace inhab {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what + " at " + std::to_string(line) + ":" +
                           std::to_string(column)),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

// Atoms are interned as plain strings drawn from one flat namespace.
// State-symbol pairs are rendered "q@a"; the tape-expansion marks use the
// ASCII names below.
inline const std::vector<std::string>& reserved_marks() {
  static const std::vector<std::string> marks = {"l",    "r",    "dot",
                                                 "circ", "star", "hash",
                                                 "dollar"};
  return marks;
}

inline constexpr const char* kMarkLeft = "l";         // left neighbor
inline constexpr const char* kMarkRight = "r";        // right neighbor
inline constexpr const char* kMarkOther = "dot";      // non-neighbor cell
inline constexpr const char* kMarkFirst = "circ";     // first cell (expansion)
inline constexpr const char* kMarkInterior = "star";  // interior cell
inline constexpr const char* kMarkSecondLast = "hash";
inline constexpr const char* kMarkLast = "dollar";
inline constexpr const char* kBlank = "_";

inline std::string state_symbol_atom(const std::string& state,
                                     const std::string& symbol) {
  return state + "@" + symbol;
}

class Type {
 public:
  enum class Kind { Atom, Arrow, Inter };

  Type() = default;

  static Type atom(std::string name) {
    if (name.empty()) throw std::invalid_argument("empty atom name");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->name = std::move(name);
    return Type(std::move(n));
  }

  static Type arrow(Type source, Type target) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Arrow;
    n->source = source.node_;
    n->target = target.node_;
    return Type(std::move(n));
  }

  // Canonicalizing constructor: flattens nested intersections, removes
  // duplicates, sorts members, collapses singletons.
  static Type inter(const std::vector<Type>& members) {
    std::vector<NodePtr> flat;
    for (const auto& m : members) {
      if (!m.node_) throw std::invalid_argument("null intersection member");
      if (m.kind() == Kind::Inter) {
        for (const auto& inner : m.node_->members) flat.push_back(inner);
      } else {
        flat.push_back(m.node_);
      }
    }
    if (flat.empty()) throw std::invalid_argument("empty intersection");
    std::sort(flat.begin(), flat.end(),
              [](const NodePtr& a, const NodePtr& b) { return cmp(a, b) < 0; });
    flat.erase(std::unique(flat.begin(), flat.end(),
                           [](const NodePtr& a, const NodePtr& b) {
                             return cmp(a, b) == 0;
                           }),
               flat.end());
    if (flat.size() == 1) return Type(flat.front());
    auto n = std::make_shared<Node>();
    n->kind = Kind::Inter;
    n->members = std::move(flat);
    return Type(std::move(n));
  }

  static Type inter(Type a, Type b) { return inter(std::vector<Type>{a, b}); }

  Kind kind() const {
    if (!node_) throw std::logic_error("kind() on an empty type");
    return node_->kind;
  }
  bool is_atom() const { return node_ && node_->kind == Kind::Atom; }
  bool is_arrow() const { return node_ && node_->kind == Kind::Arrow; }
  bool is_inter() const { return node_ && node_->kind == Kind::Inter; }
  bool empty() const { return !node_; }

  const std::string& atom_name() const {
    require(Kind::Atom);
    return node_->name;
  }
  Type source() const {
    require(Kind::Arrow);
    return Type(node_->source);
  }
  Type target() const {
    require(Kind::Arrow);
    return Type(node_->target);
  }
  std::vector<Type> members() const {
    require(Kind::Inter);
    std::vector<Type> out;
    out.reserve(node_->members.size());
    for (const auto& m : node_->members) out.emplace_back(Type(m));
    return out;
  }

  // Members of an intersection, or the type itself otherwise.
  std::vector<Type> split_members() const {
    if (is_inter()) return members();
    return {*this};
  }

  friend bool operator==(const Type& a, const Type& b) {
    return cmp(a.node_, b.node_) == 0;
  }
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }
  // Canonical total order: atoms by name, then arrows, then intersections.
  friend bool operator<(const Type& a, const Type& b) {
    return cmp(a.node_, b.node_) < 0;
  }

 private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    Kind kind = Kind::Atom;
    std::string name;
    NodePtr source, target;
    std::vector<NodePtr> members;
  };

  explicit Type(NodePtr n) : node_(std::move(n)) {}

  void require(Kind k) const {
    if (!node_ || node_->kind != k) throw std::logic_error("type kind mismatch");
  }

  static int cmp(const NodePtr& a, const NodePtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->kind != b->kind)
      return static_cast<int>(a->kind) < static_cast<int>(b->kind) ? -1 : 1;
    switch (a->kind) {
      case Kind::Atom:
        return a->name.compare(b->name);
      case Kind::Arrow: {
        int c = cmp(a->source, b->source);
        return c != 0 ? c : cmp(a->target, b->target);
      }
      case Kind::Inter: {
        std::size_t n = std::min(a->members.size(), b->members.size());
        for (std::size_t i = 0; i < n; ++i) {
          int c = cmp(a->members[i], b->members[i]);
          if (c != 0) return c;
        }
        if (a->members.size() != b->members.size())
          return a->members.size() < b->members.size() ? -1 : 1;
        return 0;
      }
    }
    return 0;
  }

  NodePtr node_;
};

// Builds the canonical form of an arbitrary type tree. Types are canonical
// by construction, so this is the identity; it exists so callers can state
// intent and tests can assert idempotence.
inline Type canonicalize(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Atom:
      return t;
    case Type::Kind::Arrow:
      return Type::arrow(canonicalize(t.source()), canonicalize(t.target()));
    case Type::Kind::Inter: {
      std::vector<Type> ms;
      for (const auto& m : t.members()) ms.push_back(canonicalize(m));
      return Type::inter(ms);
    }
  }
  throw std::logic_error("unreachable");
}

inline bool mentions_intersection(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Atom:
      return false;
    case Type::Kind::Arrow:
      return mentions_intersection(t.source()) ||
             mentions_intersection(t.target());
    case Type::Kind::Inter:
      return true;
  }
  return false;
}

// rank(t) = 0 for simple types; rank(s -> t) = max(1+rank(s), rank(t));
// rank of an intersection = max(1, member ranks).
inline int rank(const Type& t) {
  if (!mentions_intersection(t)) return 0;
  switch (t.kind()) {
    case Type::Kind::Atom:
      return 0;
    case Type::Kind::Arrow:
      return std::max(1 + rank(t.source()), rank(t.target()));
    case Type::Kind::Inter: {
      int m = 1;
      for (const auto& x : t.members()) m = std::max(m, rank(x));
      return m;
    }
  }
  throw std::logic_error("unreachable");
}

// order(a) = 0; order(s -> t) = max(1+order(s), order(t)); order of an
// intersection = max of member orders.
inline int order(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Atom:
      return 0;
    case Type::Kind::Arrow:
      return std::max(1 + order(t.source()), order(t.target()));
    case Type::Kind::Inter: {
      int m = 0;
      for (const auto& x : t.members()) m = std::max(m, order(x));
      return m;
    }
  }
  throw std::logic_error("unreachable");
}

struct ArrowComponent {
  std::vector<Type> arguments;
  Type target;  // always an atom
};

struct NonAtomicTarget : std::runtime_error {
  explicit NonAtomicTarget(const std::string& what) : std::runtime_error(what) {}
};

// Flattens each top-level intersection member into its argument list and
// atomic target. Rejects arrow chains ending in an intersection; those goals
// must be split by the caller first.
inline std::vector<ArrowComponent> arrow_components(const Type& t) {
  std::vector<ArrowComponent> out;
  for (const auto& member : t.split_members()) {
    ArrowComponent c{{}, Type()};
    Type cur = member;
    while (cur.is_arrow()) {
      c.arguments.push_back(cur.source());
      cur = cur.target();
    }
    if (!cur.is_atom())
      throw NonAtomicTarget("target not atomic: arrow chain ends in an intersection");
    c.target = cur;
    out.push_back(std::move(c));
  }
  return out;
}

// --- concrete syntax ---------------------------------------------------
//
//   type ::= iseg ('->' type)?          right-associative
//   iseg ::= prim ('&' prim)*           '&' binds stronger than '->'
//   prim ::= atom | '(' type ')'
//
// Atom names may start with a digit so that rewriting alphabets over {0,1}
// print and re-parse unchanged.

namespace detail {

inline bool atom_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_';
}
inline bool atom_char(char c) { return atom_start(c) || c == '@'; }

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r')) {
      advance();
    }
  }
  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool try_consume(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      for (std::size_t i = 0; i < tok.size(); ++i) advance();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok, const std::string& what) {
    if (!try_consume(tok)) fail("expected " + what);
  }
  std::string ident(const std::string& what) {
    skip_ws();
    if (pos_ >= text_.size() || !atom_start(text_[pos_])) {
      fail("expected " + what);
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && atom_char(text_[pos_])) advance();
    return std::string(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, line_, col_);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

inline Type parse_type_expr(Cursor& cur);

inline Type parse_type_prim(Cursor& cur) {
  if (cur.try_consume("(")) {
    Type t = parse_type_expr(cur);
    cur.expect(")", "')'");
    return t;
  }
  return Type::atom(cur.ident("atom name"));
}

inline Type parse_type_iseg(Cursor& cur) {
  std::vector<Type> members{parse_type_prim(cur)};
  while (cur.try_consume("&")) members.push_back(parse_type_prim(cur));
  return members.size() == 1 ? members.front() : Type::inter(members);
}

inline Type parse_type_expr(Cursor& cur) {
  Type lhs = parse_type_iseg(cur);
  if (cur.try_consume("->")) return Type::arrow(lhs, parse_type_expr(cur));
  return lhs;
}

}  // namespace detail

inline Type parse_type(std::string_view text) {
  detail::Cursor cur(text);
  Type t = detail::parse_type_expr(cur);
  if (!cur.eof()) cur.fail("trailing input after type");
  return t;
}

namespace detail {
// Precedence levels: 0 arrow, 1 intersection, 2 primary.
inline void print_type_rec(const Type& t, int min_level, std::string& out) {
  switch (t.kind()) {
    case Type::Kind::Atom:
      out += t.atom_name();
      return;
    case Type::Kind::Arrow: {
      bool parens = min_level > 0;
      if (parens) out += '(';
      print_type_rec(t.source(), 1, out);
      out += " -> ";
      print_type_rec(t.target(), 0, out);
      if (parens) out += ')';
      return;
    }
    case Type::Kind::Inter: {
      bool parens = min_level > 1;
      if (parens) out += '(';
      bool first = true;
      for (const auto& m : t.members()) {
        if (!first) out += " & ";
        first = false;
        print_type_rec(m, 2, out);
      }
      if (parens) out += ')';
      return;
    }
  }
}
}  // namespace detail

inline std::string print_type(const Type& t) {
  std::string out;
  detail::print_type_rec(t, 0, out);
  return out;
}

}  // namespace inhab
