#pragma once

// Small exact expression language used by the catalog templates and the
// classification table data: rationals, identifiers, + - * / ^, parentheses,
// and single comparisons (<, <=, >, >=, ==, !=) for constraints.

#include "jlb/rational.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace jlb {

using Env = std::map<std::string, Scalar>;

struct unknown_parameter : error {
  using error::error;
};

class Expr {
 public:
  enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow };

  Expr() : Expr(Scalar(0)) {}
  explicit Expr(Scalar v) : node_(std::make_shared<Node>(Node{Kind::Number, std::move(v), {}, nullptr, nullptr})) {}

  static Expr parse(std::string_view text);
  static Expr var(std::string name) {
    Expr e;
    e.node_ = std::make_shared<Node>(Node{Kind::Var, 0, std::move(name), nullptr, nullptr});
    return e;
  }

  Scalar eval(const Env& env) const { return eval(*node_, env); }

  std::set<std::string> variables() const {
    std::set<std::string> out;
    collect(*node_, out);
    return out;
  }

  bool is_constant() const { return variables().empty(); }

 private:
  struct Node {
    Kind kind;
    Scalar value;
    std::string name;
    std::shared_ptr<const Node> lhs, rhs;
  };

  static Expr make(Kind k, Expr a, Expr b = Expr()) {
    Expr e;
    e.node_ = std::make_shared<Node>(Node{k, 0, {}, a.node_, b.node_});
    return e;
  }

  static Scalar eval(const Node& n, const Env& env) {
    switch (n.kind) {
      case Kind::Number: return n.value;
      case Kind::Var: {
        auto it = env.find(n.name);
        if (it == env.end()) throw unknown_parameter("no value for parameter '" + n.name + "'");
        return it->second;
      }
      case Kind::Neg: return -eval(*n.lhs, env);
      case Kind::Add: return eval(*n.lhs, env) + eval(*n.rhs, env);
      case Kind::Sub: return eval(*n.lhs, env) - eval(*n.rhs, env);
      case Kind::Mul: return eval(*n.lhs, env) * eval(*n.rhs, env);
      case Kind::Div: {
        const Scalar d = eval(*n.rhs, env);
        if (d == 0) throw error("division by zero in expression");
        return eval(*n.lhs, env) / d;
      }
      case Kind::Pow: {
        const Scalar base = eval(*n.lhs, env);
        const Scalar ex = eval(*n.rhs, env);
        if (boost::multiprecision::denominator(ex) != 1) throw error("non-integer exponent");
        long k = boost::multiprecision::numerator(ex).convert_to<long>();
        if (k < 0 && base == 0) throw error("division by zero in expression");
        Scalar r = 1;
        for (long i = 0; i < (k < 0 ? -k : k); ++i) r *= base;
        return k < 0 ? Scalar(1 / r) : r;
      }
    }
    return 0;
  }

  static void collect(const Node& n, std::set<std::string>& out) {
    if (n.kind == Kind::Var) out.insert(n.name);
    if (n.lhs) collect(*n.lhs, out);
    if (n.rhs) collect(*n.rhs, out);
  }

  friend class ExprParser;
  std::shared_ptr<const Node> node_;
};

/// Recursive-descent parser. Grammar:
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := '-' unary | '+' unary | power
///   power   := atom ('^' unary)?
///   atom    := number | identifier | '(' sum ')'
class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  Expr parse_all() {
    Expr e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

  Expr sum() {
    Expr e = product();
    for (;;) {
      if (eat('+')) e = Expr::make(Expr::Kind::Add, e, product());
      else if (eat('-')) e = Expr::make(Expr::Kind::Sub, e, product());
      else return e;
    }
  }

  std::size_t pos() const { return pos_; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error("expression '" + std::string(s_) + "' at column " + std::to_string(pos_ + 1) + ": " + msg);
  }

 private:
  Expr product() {
    Expr e = unary();
    for (;;) {
      if (eat('*')) e = Expr::make(Expr::Kind::Mul, e, unary());
      else if (eat('/')) e = Expr::make(Expr::Kind::Div, e, unary());
      else return e;
    }
  }

  Expr unary() {
    if (eat('-')) return Expr::make(Expr::Kind::Neg, unary());
    if (eat('+')) return unary();
    Expr base = atom();
    if (eat('^')) return Expr::make(Expr::Kind::Pow, base, unary());
    return base;
  }

  Expr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      return Expr(parse_scalar(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return Expr::var(std::string(s_.substr(start, pos_ - start)));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline Expr Expr::parse(std::string_view text) { return ExprParser(text).parse_all(); }

/// A single comparison "lhs op rhs", e.g. "a > 0", "c != -d", "det != 0".
class Predicate {
 public:
  enum class Op { Lt, Le, Gt, Ge, Eq, Ne };

  static Predicate parse(std::string_view text) {
    ExprParser p(text);
    Predicate out;
    out.text_ = std::string(text);
    out.lhs_ = p.sum();
    if (p.eat("<=")) out.op_ = Op::Le;
    else if (p.eat(">=")) out.op_ = Op::Ge;
    else if (p.eat("!=")) out.op_ = Op::Ne;
    else if (p.eat("==")) out.op_ = Op::Eq;
    else if (p.eat('<')) out.op_ = Op::Lt;
    else if (p.eat('>')) out.op_ = Op::Gt;
    else p.fail("expected a comparison operator");
    out.rhs_ = p.sum();
    p.skip();
    if (p.pos() != text.size()) p.fail("trailing input");
    return out;
  }

  bool holds(const Env& env) const {
    const Scalar l = lhs_.eval(env);
    const Scalar r = rhs_.eval(env);
    switch (op_) {
      case Op::Lt: return l < r;
      case Op::Le: return l <= r;
      case Op::Gt: return l > r;
      case Op::Ge: return l >= r;
      case Op::Eq: return l == r;
      case Op::Ne: return l != r;
    }
    return false;
  }

  std::set<std::string> variables() const {
    auto v = lhs_.variables();
    auto w = rhs_.variables();
    v.insert(w.begin(), w.end());
    return v;
  }

  const std::string& text() const { return text_; }

 private:
  std::string text_;
  Expr lhs_, rhs_;
  Op op_ = Op::Eq;
};

/// Returns the first violated predicate's text, or an empty string.
/// A predicate whose evaluation divides by zero counts as violated.
inline std::string first_violation(const std::vector<Predicate>& ps, const Env& env) {
  for (const auto& p : ps) {
    try {
      if (!p.holds(env)) return p.text();
    } catch (const unknown_parameter&) {
      throw;
    } catch (const error&) {
      return p.text();
    }
  }
  return {};
}

}  // namespace jlb
