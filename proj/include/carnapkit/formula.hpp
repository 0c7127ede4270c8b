#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "carnapkit/error.hpp"

namespace carnap {

enum class Kind : std::uint8_t { Atom, Bottom, And, Or, Imp };

/// Immutable propositional formula over {bot, &, |, ->} with named atoms.
///
/// Negation is the implication `φ -> bot` and `top` is `bot -> bot`; both are
/// recognised structurally, never stored as separate node kinds. Copies share
/// structure.
class Formula {
 public:
  static Formula atom(std::string name) {
    return Formula{std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}, {}})};
  }
  static Formula bottom() {
    static const Formula b{std::make_shared<const Node>(Node{Kind::Bottom, {}, {}, {}})};
    return b;
  }
  static Formula top() { return imp(bottom(), bottom()); }
  static Formula conj(Formula a, Formula b) { return binary(Kind::And, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
  static Formula imp(Formula a, Formula b) { return binary(Kind::Imp, std::move(a), std::move(b)); }
  static Formula neg(Formula a) { return imp(std::move(a), bottom()); }
  static Formula iff(const Formula& a, const Formula& b) { return conj(imp(a, b), imp(b, a)); }

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const Formula& left() const { return *node_->left; }
  const Formula& right() const { return *node_->right; }

  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_bottom() const { return kind() == Kind::Bottom; }
  bool is_neg() const { return kind() == Kind::Imp && right().is_bottom(); }
  /// Operand of a negation; only meaningful when is_neg().
  const Formula& negated() const { return left(); }

  std::size_t size() const {
    return is_leaf() ? 1 : 1 + left().size() + right().size();
  }
  /// Leaves have depth 1.
  int depth() const {
    return is_leaf() ? 1 : 1 + std::max(left().depth(), right().depth());
  }

  void collect_atoms(std::set<std::string>& out) const {
    if (is_atom()) {
      out.insert(name());
    } else if (!is_bottom()) {
      left().collect_atoms(out);
      right().collect_atoms(out);
    }
  }
  std::set<std::string> atoms() const {
    std::set<std::string> out;
    collect_atoms(out);
    return out;
  }

  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    switch (a.kind()) {
      case Kind::Atom: return a.name() <=> b.name();
      case Kind::Bottom: return std::strong_ordering::equal;
      default:
        if (auto c = a.left() <=> b.left(); c != 0) return c;
        return a.right() <=> b.right();
    }
  }
  friend bool operator==(const Formula& a, const Formula& b) { return (a <=> b) == 0; }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Formula> left;
    std::shared_ptr<const Formula> right;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula binary(Kind k, Formula a, Formula b) {
    return Formula{std::make_shared<const Node>(
        Node{k, {}, std::make_shared<const Formula>(std::move(a)), std::make_shared<const Formula>(std::move(b))})};
  }
  bool is_leaf() const { return kind() == Kind::Atom || kind() == Kind::Bottom; }

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Printing

namespace detail {

// Binding strength; higher binds tighter.
enum Prec : int { kImp = 1, kOr = 2, kAnd = 3, kNeg = 4 };

inline int prec_of(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Bottom: return kNeg + 1;
    case Kind::And: return kAnd;
    case Kind::Or: return kOr;
    case Kind::Imp:
      if (f.is_neg()) return f.negated().is_bottom() ? kNeg + 1 : kNeg;
      return kImp;
  }
  return kImp;
}

inline void print_to(std::string& out, const Formula& f, int min_prec) {
  const int p = prec_of(f);
  const bool parens = p < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case Kind::Atom: out += f.name(); break;
    case Kind::Bottom: out += "bot"; break;
    case Kind::And:
      print_to(out, f.left(), kAnd);
      out += " & ";
      print_to(out, f.right(), kAnd + 1);
      break;
    case Kind::Or:
      print_to(out, f.left(), kOr);
      out += " | ";
      print_to(out, f.right(), kOr + 1);
      break;
    case Kind::Imp:
      if (f.is_neg() && f.negated().is_bottom()) {
        out += "top";
      } else if (f.is_neg()) {
        out += '~';
        print_to(out, f.negated(), kNeg);
      } else {
        print_to(out, f.left(), kImp + 1);
        out += " -> ";
        print_to(out, f.right(), kImp);
      }
      break;
  }
  if (parens) out += ')';
}

}  // namespace detail

/// ASCII rendering; `parse_formula(to_string(f)) == f` for every f.
inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print_to(out, f, detail::kImp);
  return out;
}

// ---------------------------------------------------------------------------
// Consequences

/// Γ ⊢ φ with Γ finite and duplicate-free (first occurrence order is kept).
class Consequence {
 public:
  Consequence(std::vector<Formula> premises, Formula conclusion) : conclusion_(std::move(conclusion)) {
    for (auto& p : premises) {
      if (std::find(premises_.begin(), premises_.end(), p) == premises_.end()) premises_.push_back(std::move(p));
    }
  }

  const std::vector<Formula>& premises() const { return premises_; }
  const Formula& conclusion() const { return conclusion_; }

  std::set<std::string> atoms() const {
    std::set<std::string> out;
    for (const auto& p : premises_) p.collect_atoms(out);
    conclusion_.collect_atoms(out);
    return out;
  }

  friend bool operator==(const Consequence&, const Consequence&) = default;

 private:
  std::vector<Formula> premises_;
  Formula conclusion_;
};

inline std::string to_string(const Consequence& c) {
  std::string out;
  for (std::size_t i = 0; i < c.premises().size(); ++i) {
    if (i) out += ", ";
    out += to_string(c.premises()[i]);
  }
  out += out.empty() ? "|- " : " |- ";
  out += to_string(c.conclusion());
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

enum class Tok { Atom, Bot, Top, Neg, And, Or, Imp, Turnstile, Comma, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline bool starts_with_at(std::string_view s, std::size_t i, std::string_view lit) {
  return s.substr(i, lit.size()) == lit;
}

inline std::vector<Token> tokenize(std::string_view s) {
  // Unicode aliases map onto the ASCII operators.
  static const std::pair<std::string_view, Tok> symbols[] = {
      {"|-", Tok::Turnstile}, {"->", Tok::Imp}, {"⊢", Tok::Turnstile}, {"→", Tok::Imp},
      {"¬", Tok::Neg},   {"∧", Tok::And}, {"∨", Tok::Or},    {"⊥", Tok::Bot},
      {"⊤", Tok::Top},   {"~", Tok::Neg},  {"&", Tok::And},          {"|", Tok::Or},
      {",", Tok::Comma},      {"(", Tok::LParen}, {")", Tok::RParen},
  };
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    bool matched = false;
    for (const auto& [lit, kind] : symbols) {
      if (starts_with_at(s, i, lit)) {
        out.push_back({kind, std::string(lit), i});
        i += lit.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string word(s.substr(i, j - i));
      Tok kind = word == "bot" ? Tok::Bot : word == "top" ? Tok::Top : Tok::Atom;
      out.push_back({kind, std::move(word), i});
      i = j;
      continue;
    }
    throw ParseError("unknown token '" + std::string(1, c) + "'", i);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Formula formula() { return imp(); }

  const Token& peek() const { return toks_[i_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++i_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const auto& t = peek();
    throw ParseError(msg + (t.kind == Tok::End ? " but found end of input" : " but found '" + t.text + "'"), t.pos);
  }

 private:
  Formula imp() {
    Formula lhs = disj();
    if (accept(Tok::Imp)) return Formula::imp(std::move(lhs), imp());
    return lhs;
  }
  Formula disj() {
    Formula f = conj();
    while (accept(Tok::Or)) f = Formula::disj(std::move(f), conj());
    return f;
  }
  Formula conj() {
    Formula f = unary();
    while (accept(Tok::And)) f = Formula::conj(std::move(f), unary());
    return f;
  }
  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Neg: ++i_; return Formula::neg(unary());
      case Tok::Atom: ++i_; return Formula::atom(t.text);
      case Tok::Bot: ++i_; return Formula::bottom();
      case Tok::Top: ++i_; return Formula::top();
      case Tok::LParen: {
        ++i_;
        Formula f = imp();
        expect(Tok::RParen, "')'");
        return f;
      }
      default: fail("expected a formula");
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Parses the ASCII grammar (`~` > `&` > `|` > `->`, `->` right-associative)
/// with the Unicode aliases ¬ ∧ ∨ → ⊥ ⊤. Throws ParseError with a byte offset.
inline Formula parse_formula(std::string_view text) {
  detail::Parser p(text);
  Formula f = p.formula();
  if (p.peek().kind != detail::Tok::End) p.fail("expected end of formula");
  return f;
}

/// Parses `φ1, ..., φn |- φ` (n may be zero).
inline Consequence parse_consequence(std::string_view text) {
  detail::Parser p(text);
  std::vector<Formula> premises;
  if (!p.accept(detail::Tok::Turnstile)) {
    premises.push_back(p.formula());
    while (p.accept(detail::Tok::Comma)) premises.push_back(p.formula());
    p.expect(detail::Tok::Turnstile, "'|-'");
  }
  Formula conclusion = p.formula();
  if (p.peek().kind != detail::Tok::End) p.fail("expected end of consequence");
  return Consequence(std::move(premises), std::move(conclusion));
}

// ---------------------------------------------------------------------------
// Negative translations

/// The double-negation translation used by the Holliday interpretation:
///   g(p) = p, g(bot) = bot,
///   g(φ&ψ) = ~~gφ & ~~gψ,  g(~φ) = ~~~gφ,
///   g(φ->ψ) = ~(gφ & ~gψ), g(φ|ψ) = ~(~gφ & ~gψ).
/// Negations are matched before general implications.
inline Formula translate_g(const Formula& f) {
  using F = Formula;
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Bottom: return f;
    case Kind::And: return F::conj(F::neg(F::neg(translate_g(f.left()))), F::neg(F::neg(translate_g(f.right()))));
    case Kind::Or: return F::neg(F::conj(F::neg(translate_g(f.left())), F::neg(translate_g(f.right()))));
    case Kind::Imp:
      if (f.is_neg()) return F::neg(F::neg(F::neg(translate_g(f.negated()))));
      return F::neg(F::conj(translate_g(f.left()), F::neg(translate_g(f.right()))));
  }
  return f;
}

/// Kolmogorov translation: `~~` in front of every subformula (negation is
/// treated as a primitive connective, so G(~φ) = ~~~G(φ)).
inline Formula translate_G(const Formula& f) {
  using F = Formula;
  auto dn = [](Formula x) { return F::neg(F::neg(std::move(x))); };
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Bottom: return dn(f);
    case Kind::And: return dn(F::conj(translate_G(f.left()), translate_G(f.right())));
    case Kind::Or: return dn(F::disj(translate_G(f.left()), translate_G(f.right())));
    case Kind::Imp:
      if (f.is_neg()) return dn(F::neg(translate_G(f.negated())));
      return dn(F::imp(translate_G(f.left()), translate_G(f.right())));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Enumeration

/// Names of the first `n` atoms: p, q, r, s, t, then p5, p6, ...
inline std::vector<std::string> first_atoms(int n) {
  static const char* base[] = {"p", "q", "r", "s", "t"};
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(i < 5 ? base[i] : "p" + std::to_string(i));
  return out;
}

/// Every formula over the first `atoms` atoms and bot with depth <= `depth`,
/// in a fixed order: shallower formulas first; within a level by connective
/// (&, |, ->), then left operand, then right operand, in the order of the
/// previous levels.
inline std::vector<Formula> formula_universe(int atoms, int depth) {
  std::vector<Formula> all;
  if (depth < 1) return all;
  for (const auto& a : first_atoms(atoms)) all.push_back(Formula::atom(a));
  all.push_back(Formula::bottom());
  std::vector<int> depths(all.size(), 1);
  for (int d = 2; d <= depth; ++d) {
    const std::size_t prev = all.size();
    for (Kind k : {Kind::And, Kind::Or, Kind::Imp}) {
      for (std::size_t i = 0; i < prev; ++i) {
        for (std::size_t j = 0; j < prev; ++j) {
          if (std::max(depths[i], depths[j]) != d - 1) continue;
          all.push_back(k == Kind::And ? Formula::conj(all[i], all[j])
                        : k == Kind::Or ? Formula::disj(all[i], all[j])
                                        : Formula::imp(all[i], all[j]));
          depths.push_back(d);
        }
      }
    }
  }
  return all;
}

}  // namespace carnap
