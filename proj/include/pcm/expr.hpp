#pragma once

// Closed-form scalar expressions in chart coordinates.
//
// Grammar (whitespace between tokens is ignored):
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' factor)?
//   base   := number | ident | ident '(' expr ')' | '(' expr ')' | '-' base
//
// Identifiers are coordinate names, the constants `pi` and `e`, or one of the
// functions sin, cos, tan, exp, log, sqrt, sinh, cosh, tanh.  Note that unary
// minus binds tighter than '^', so `-x^2` is `(-x)^2`.
//
// Expressions are immutable trees of shared nodes; copies are cheap and
// evaluation never mutates shared state.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcm/dual.hpp"

namespace pcm {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Func { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Tanh };

inline const char* func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tan: return "tan";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    case Func::Sinh: return "sinh";
    case Func::Cosh: return "cosh";
    case Func::Tanh: return "tanh";
  }
  return "?";
}

inline std::optional<Func> func_from_name(std::string_view s) {
  static constexpr Func all[] = {Func::Sin,  Func::Cos,  Func::Tan,  Func::Exp, Func::Log,
                                 Func::Sqrt, Func::Sinh, Func::Cosh, Func::Tanh};
  for (Func f : all)
    if (s == func_name(f)) return f;
  return std::nullopt;
}

inline bool is_reserved_name(std::string_view s) {
  return s == "pi" || s == "e" || func_from_name(s).has_value();
}

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind { Constant, Coord, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind;
  double value = 0.0;   // Constant
  int index = -1;       // Coord
  Func func = Func::Sin;  // Call
  std::string name;     // named constants ("pi", "e") keep their spelling
  NodePtr lhs, rhs;     // unary ops use lhs only
};

namespace detail {

inline NodePtr make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }

inline bool is_const(const NodePtr& n, double v) {
  return n->kind == Node::Kind::Constant && n->value == v;
}

inline bool is_const(const NodePtr& n) { return n->kind == Node::Kind::Constant; }

// Exponent handled by repeated multiplication.
inline std::optional<int> small_integer(const NodePtr& n) {
  const Node* p = n.get();
  double sign = 1.0;
  if (p->kind == Node::Kind::Neg) {
    sign = -1.0;
    p = p->lhs.get();
  }
  if (p->kind != Node::Kind::Constant) return std::nullopt;
  double v = sign * p->value;
  if (v != std::floor(v) || std::fabs(v) > 64.0) return std::nullopt;
  return static_cast<int>(v);
}

}  // namespace detail

class Expression {
 public:
  Expression() = default;
  Expression(NodePtr root, std::shared_ptr<const std::vector<std::string>> coords)
      : root_(std::move(root)), coords_(std::move(coords)) {}

  static Expression constant(double v, std::shared_ptr<const std::vector<std::string>> coords) {
    return Expression(detail::make_node({.kind = Node::Kind::Constant, .value = v}), std::move(coords));
  }
  static Expression coordinate(int i, std::shared_ptr<const std::vector<std::string>> coords) {
    return Expression(detail::make_node({.kind = Node::Kind::Coord, .index = i}), std::move(coords));
  }

  const NodePtr& root() const { return root_; }
  const std::vector<std::string>& coords() const { return *coords_; }
  const std::shared_ptr<const std::vector<std::string>>& coords_ptr() const { return coords_; }
  int dim() const { return static_cast<int>(coords_->size()); }
  bool empty() const { return !root_; }

  bool is_zero() const { return detail::is_const(root_, 0.0); }
  std::optional<double> constant_value() const {
    if (detail::is_const(root_)) return root_->value;
    return std::nullopt;
  }

 private:
  NodePtr root_;
  std::shared_ptr<const std::vector<std::string>> coords_;
};

// ---------------------------------------------------------------------------
// Builders.  These fold trivial constants (0, 1) so that symbolic derivatives
// and substitutions stay small.  The parser does not use them: a parsed tree
// mirrors its source text.

namespace build {

inline NodePtr constant(double v) { return detail::make_node({.kind = Node::Kind::Constant, .value = v}); }
inline NodePtr coord(int i) { return detail::make_node({.kind = Node::Kind::Coord, .index = i}); }

inline NodePtr neg(NodePtr a) {
  if (detail::is_const(a)) return constant(-a->value);
  if (a->kind == Node::Kind::Neg) return a->lhs;
  return detail::make_node({.kind = Node::Kind::Neg, .lhs = std::move(a)});
}

inline NodePtr add(NodePtr a, NodePtr b) {
  if (detail::is_const(a, 0.0)) return b;
  if (detail::is_const(b, 0.0)) return a;
  if (detail::is_const(a) && detail::is_const(b)) return constant(a->value + b->value);
  return detail::make_node({.kind = Node::Kind::Add, .lhs = std::move(a), .rhs = std::move(b)});
}

inline NodePtr sub(NodePtr a, NodePtr b) {
  if (detail::is_const(b, 0.0)) return a;
  if (detail::is_const(a, 0.0)) return neg(std::move(b));
  if (detail::is_const(a) && detail::is_const(b)) return constant(a->value - b->value);
  return detail::make_node({.kind = Node::Kind::Sub, .lhs = std::move(a), .rhs = std::move(b)});
}

inline NodePtr mul(NodePtr a, NodePtr b) {
  if (detail::is_const(a, 0.0) || detail::is_const(b, 0.0)) return constant(0.0);
  if (detail::is_const(a, 1.0)) return b;
  if (detail::is_const(b, 1.0)) return a;
  if (detail::is_const(a, -1.0)) return neg(std::move(b));
  if (detail::is_const(b, -1.0)) return neg(std::move(a));
  if (detail::is_const(a) && detail::is_const(b)) return constant(a->value * b->value);
  return detail::make_node({.kind = Node::Kind::Mul, .lhs = std::move(a), .rhs = std::move(b)});
}

inline NodePtr div(NodePtr a, NodePtr b) {
  if (detail::is_const(a, 0.0)) return constant(0.0);
  if (detail::is_const(b, 1.0)) return a;
  return detail::make_node({.kind = Node::Kind::Div, .lhs = std::move(a), .rhs = std::move(b)});
}

inline NodePtr pow(NodePtr a, NodePtr b) {
  if (detail::is_const(b, 1.0)) return a;
  if (detail::is_const(b, 0.0)) return constant(1.0);
  return detail::make_node({.kind = Node::Kind::Pow, .lhs = std::move(a), .rhs = std::move(b)});
}

inline NodePtr call(Func f, NodePtr a) {
  return detail::make_node({.kind = Node::Kind::Call, .func = f, .lhs = std::move(a)});
}

}  // namespace build

inline Expression operator+(const Expression& a, const Expression& b) {
  return {build::add(a.root(), b.root()), a.coords_ptr()};
}
inline Expression operator-(const Expression& a, const Expression& b) {
  return {build::sub(a.root(), b.root()), a.coords_ptr()};
}
inline Expression operator*(const Expression& a, const Expression& b) {
  return {build::mul(a.root(), b.root()), a.coords_ptr()};
}
inline Expression operator/(const Expression& a, const Expression& b) {
  return {build::div(a.root(), b.root()), a.coords_ptr()};
}
inline Expression operator-(const Expression& a) { return {build::neg(a.root()), a.coords_ptr()}; }
inline Expression operator*(double c, const Expression& b) {
  return {build::mul(build::constant(c), b.root()), b.coords_ptr()};
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& coords) : src_(src), coords_(coords) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_node({.kind = Node::Kind::Add, .lhs = lhs, .rhs = term()});
      } else if (accept('-')) {
        lhs = make_node({.kind = Node::Kind::Sub, .lhs = lhs, .rhs = term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = make_node({.kind = Node::Kind::Mul, .lhs = lhs, .rhs = factor()});
      } else if (accept('/')) {
        lhs = make_node({.kind = Node::Kind::Div, .lhs = lhs, .rhs = factor()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    NodePtr b = base();
    if (accept('^')) return make_node({.kind = Node::Kind::Pow, .lhs = b, .rhs = factor()});
    return b;
  }

  NodePtr base() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    char c = src_[pos_];
    if (c == '-') {
      ++pos_;
      return make_node({.kind = Node::Kind::Neg, .lhs = base()});
    }
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) fail_at("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;  // `2e` is a number followed by the constant e
    }
    std::string text(src_.substr(start, pos_ - start));
    return make_node({.kind = Node::Kind::Constant, .value = std::strtod(text.c_str(), nullptr)});
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string id(src_.substr(start, pos_ - start));
    skip_ws();
    bool called = pos_ < src_.size() && src_[pos_] == '(';

    if (auto f = func_from_name(id)) {
      if (!called) fail_at("function '" + id + "' requires one argument", start);
      ++pos_;
      std::vector<NodePtr> args;
      if (!accept(')')) {
        do {
          args.push_back(expr());
        } while (accept(','));
        if (!accept(')')) fail("expected ')'");
      }
      if (args.size() != 1)
        fail_at("arity mismatch: '" + id + "' takes 1 argument, got " + std::to_string(args.size()),
                start);
      return make_node({.kind = Node::Kind::Call, .func = *f, .lhs = args.front()});
    }
    if (called) fail_at("'" + id + "' is not a function", start);
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (coords_[i] == id) return make_node({.kind = Node::Kind::Coord, .index = static_cast<int>(i)});
    if (id == "pi") return make_node({.kind = Node::Kind::Constant, .value = std::numbers::pi, .name = "pi"});
    if (id == "e") return make_node({.kind = Node::Kind::Constant, .value = std::numbers::e, .name = "e"});
    fail_at("unknown identifier '" + id + "'", start);
  }

  std::string_view src_;
  const std::vector<std::string>& coords_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expression parse(std::string_view source, std::shared_ptr<const std::vector<std::string>> coords) {
  for (const auto& c : *coords)
    if (is_reserved_name(c)) throw ParseError("coordinate name '" + c + "' is reserved", 0);
  detail::Parser p(source, *coords);
  return Expression(p.parse(), std::move(coords));
}

inline Expression parse(std::string_view source, const std::vector<std::string>& coords) {
  return parse(source, std::make_shared<const std::vector<std::string>>(coords));
}

// ---------------------------------------------------------------------------
// Pretty printing.  The output re-parses to a structurally identical tree,
// so round-tripped expressions evaluate bit-identically.

namespace detail {

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest spelling that round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

// Precedence classes: 1 sum, 2 product, 3 power, 4 base.
inline int precedence(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Add:
    case Node::Kind::Sub: return 1;
    case Node::Kind::Mul:
    case Node::Kind::Div: return 2;
    case Node::Kind::Pow: return 3;
    default: return 4;
  }
}

inline void print(const Node& n, const std::vector<std::string>& coords, std::string& out);

inline void print_at(const Node& n, int min_prec, const std::vector<std::string>& coords, std::string& out) {
  if (precedence(n) < min_prec) {
    out += '(';
    print(n, coords, out);
    out += ')';
  } else {
    print(n, coords, out);
  }
}

inline void print(const Node& n, const std::vector<std::string>& coords, std::string& out) {
  switch (n.kind) {
    case Node::Kind::Constant:
      if (!n.name.empty()) {
        out += n.name;
      } else if (n.value < 0 || std::signbit(n.value)) {
        out += '-';
        out += format_number(-n.value);
      } else {
        out += format_number(n.value);
      }
      return;
    case Node::Kind::Coord: out += coords.at(n.index); return;
    case Node::Kind::Neg:
      out += '-';
      print_at(*n.lhs, 4, coords, out);
      return;
    case Node::Kind::Add:
    case Node::Kind::Sub:
      print_at(*n.lhs, 1, coords, out);
      out += n.kind == Node::Kind::Add ? " + " : " - ";
      print_at(*n.rhs, 2, coords, out);
      return;
    case Node::Kind::Mul:
    case Node::Kind::Div:
      print_at(*n.lhs, 2, coords, out);
      out += n.kind == Node::Kind::Mul ? "*" : "/";
      print_at(*n.rhs, 3, coords, out);
      return;
    case Node::Kind::Pow:
      print_at(*n.lhs, 4, coords, out);
      out += '^';
      print_at(*n.rhs, 3, coords, out);
      return;
    case Node::Kind::Call:
      out += func_name(n.func);
      out += '(';
      print(*n.lhs, coords, out);
      out += ')';
      return;
  }
}

}  // namespace detail

inline std::string to_string(const Expression& e) {
  std::string out;
  detail::print(*e.root(), e.coords(), out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation over any scalar type (double or nested duals).

namespace detail {

inline std::string describe_point(const std::vector<std::string>& coords, std::span<const double> x) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    os << (i < coords.size() ? coords[i] : "?") << '=' << x[i];
  }
  os << ')';
  return os.str();
}

template <class S>
struct EvalContext {
  std::span<const S> x;
  const std::vector<std::string>& coords;

  [[noreturn]] void domain_error(const std::string& what) const {
    std::vector<double> p;
    for (const S& xi : x) p.push_back(scalar_value(xi));
    throw DomainError(what + " at " + describe_point(coords, p));
  }
};

template <class S>
S integer_power(const S& a, int n, const EvalContext<S>& ctx) {
  if (n == 0) return S(1.0);
  S acc = a;
  for (int i = 1; i < std::abs(n); ++i) acc = acc * a;
  if (n < 0) {
    if (scalar_value(acc) == 0.0) ctx.domain_error("division by zero in negative power");
    acc = S(1.0) / acc;
  }
  return acc;
}

template <class S>
S evaluate(const Node& n, const EvalContext<S>& ctx) {
  using std::cos;
  using std::cosh;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  using std::tan;
  using std::tanh;
  switch (n.kind) {
    case Node::Kind::Constant: return S(n.value);
    case Node::Kind::Coord: return ctx.x[n.index];
    case Node::Kind::Neg: return -evaluate(*n.lhs, ctx);
    case Node::Kind::Add: return evaluate(*n.lhs, ctx) + evaluate(*n.rhs, ctx);
    case Node::Kind::Sub: return evaluate(*n.lhs, ctx) - evaluate(*n.rhs, ctx);
    case Node::Kind::Mul: return evaluate(*n.lhs, ctx) * evaluate(*n.rhs, ctx);
    case Node::Kind::Div: {
      S den = evaluate(*n.rhs, ctx);
      if (scalar_value(den) == 0.0) ctx.domain_error("division by zero");
      return evaluate(*n.lhs, ctx) / den;
    }
    case Node::Kind::Pow: {
      S a = evaluate(*n.lhs, ctx);
      if (auto k = small_integer(n.rhs)) return integer_power(a, *k, ctx);
      if (scalar_value(a) <= 0.0) ctx.domain_error("non-integer power of non-positive base");
      return exp(evaluate(*n.rhs, ctx) * log(a));
    }
    case Node::Kind::Call: {
      S a = evaluate(*n.lhs, ctx);
      switch (n.func) {
        case Func::Sin: return sin(a);
        case Func::Cos: return cos(a);
        case Func::Tan:
          if (std::cos(scalar_value(a)) == 0.0) ctx.domain_error("tan at a pole");
          return tan(a);
        case Func::Exp: return exp(a);
        case Func::Log:
          if (scalar_value(a) <= 0.0) ctx.domain_error("log of non-positive value");
          return log(a);
        case Func::Sqrt:
          if (scalar_value(a) < 0.0) ctx.domain_error("sqrt of negative value");
          return sqrt(a);
        case Func::Sinh: return sinh(a);
        case Func::Cosh: return cosh(a);
        case Func::Tanh: return tanh(a);
      }
    }
  }
  return S(0.0);
}

}  // namespace detail

template <class S>
S evaluate(const Expression& e, std::span<const S> x) {
  return detail::evaluate(*e.root(), detail::EvalContext<S>{x, e.coords()});
}

inline double evaluate(const Expression& e, std::span<const double> x) {
  return detail::evaluate(*e.root(), detail::EvalContext<double>{x, e.coords()});
}

// ---------------------------------------------------------------------------
// Symbolic calculus on trees: differentiation and substitution.

namespace detail {

inline NodePtr differentiate(const NodePtr& n, int i) {
  using namespace build;
  switch (n->kind) {
    case Node::Kind::Constant: return constant(0.0);
    case Node::Kind::Coord: return constant(n->index == i ? 1.0 : 0.0);
    case Node::Kind::Neg: return neg(differentiate(n->lhs, i));
    case Node::Kind::Add: return add(differentiate(n->lhs, i), differentiate(n->rhs, i));
    case Node::Kind::Sub: return sub(differentiate(n->lhs, i), differentiate(n->rhs, i));
    case Node::Kind::Mul:
      return add(mul(differentiate(n->lhs, i), n->rhs), mul(n->lhs, differentiate(n->rhs, i)));
    case Node::Kind::Div: {
      NodePtr da = differentiate(n->lhs, i);
      NodePtr db = differentiate(n->rhs, i);
      return sub(div(da, n->rhs), div(mul(n->lhs, db), mul(n->rhs, n->rhs)));
    }
    case Node::Kind::Pow: {
      NodePtr da = differentiate(n->lhs, i);
      if (auto k = small_integer(n->rhs))
        return mul(mul(constant(*k), pow(n->lhs, constant(*k - 1))), da);
      // d(a^b) = a^b (b' log a + b a'/a)
      NodePtr db = differentiate(n->rhs, i);
      NodePtr inner = add(mul(db, call(Func::Log, n->lhs)), div(mul(n->rhs, da), n->lhs));
      return mul(n, inner);
    }
    case Node::Kind::Call: {
      NodePtr a = n->lhs;
      NodePtr da = differentiate(a, i);
      if (is_const(da, 0.0)) return constant(0.0);
      NodePtr outer;
      switch (n->func) {
        case Func::Sin: outer = call(Func::Cos, a); break;
        case Func::Cos: outer = neg(call(Func::Sin, a)); break;
        case Func::Tan: outer = add(constant(1.0), pow(n, constant(2.0))); break;
        case Func::Exp: outer = n; break;
        case Func::Log: return div(da, a);
        case Func::Sqrt: return div(da, mul(constant(2.0), n));
        case Func::Sinh: outer = call(Func::Cosh, a); break;
        case Func::Cosh: outer = call(Func::Sinh, a); break;
        case Func::Tanh: outer = sub(constant(1.0), pow(n, constant(2.0))); break;
      }
      return mul(outer, da);
    }
  }
  return constant(0.0);
}

inline NodePtr substitute(const NodePtr& n, std::span<const NodePtr> replacement) {
  using namespace build;
  switch (n->kind) {
    case Node::Kind::Constant: return n;
    case Node::Kind::Coord: return replacement[n->index];
    case Node::Kind::Neg: return neg(substitute(n->lhs, replacement));
    case Node::Kind::Add: return add(substitute(n->lhs, replacement), substitute(n->rhs, replacement));
    case Node::Kind::Sub: return sub(substitute(n->lhs, replacement), substitute(n->rhs, replacement));
    case Node::Kind::Mul: return mul(substitute(n->lhs, replacement), substitute(n->rhs, replacement));
    case Node::Kind::Div: return div(substitute(n->lhs, replacement), substitute(n->rhs, replacement));
    case Node::Kind::Pow: return pow(substitute(n->lhs, replacement), substitute(n->rhs, replacement));
    case Node::Kind::Call: return call(n->func, substitute(n->lhs, replacement));
  }
  return n;
}

}  // namespace detail

/// Partial derivative with respect to coordinate `i`, as a new expression.
inline Expression differentiate(const Expression& e, int i) {
  return {detail::differentiate(e.root(), i), e.coords_ptr()};
}

/// Replaces coordinate k of `e` by `replacement[k]`; the result lives on the
/// replacement's coordinate list.
inline Expression substitute(const Expression& e, std::span<const Expression> replacement) {
  if (static_cast<int>(replacement.size()) != e.dim())
    throw std::invalid_argument("substitute: replacement count does not match coordinate count");
  std::vector<NodePtr> nodes;
  nodes.reserve(replacement.size());
  for (const auto& r : replacement) nodes.push_back(r.root());
  auto coords = replacement.empty() ? e.coords_ptr() : replacement.front().coords_ptr();
  return {detail::substitute(e.root(), nodes), coords};
}

/// Structural equality (same tree shape and leaves).
inline bool structurally_equal(const Expression& a, const Expression& b) { return to_string(a) == to_string(b); }

}  // namespace pcm
