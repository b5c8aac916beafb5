#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jetlag/error.hpp"

namespace jetlag::expr {

enum class NodeKind : std::uint8_t { Constant, Variable, Negate, Sum, Product, Divide, Power, Call };

// Sign is internal: it is what abs differentiates into.
enum class Function : std::uint8_t { Sin, Cos, Tan, Exp, Log, Sqrt, Abs, Sign };

struct Node;
using Ast = std::shared_ptr<const Node>;

/// Expression tree node. Sum and Product are n-ary and kept flat; Power
/// carries its (constant) exponent in `value`.
struct Node {
  NodeKind kind = NodeKind::Constant;
  double value = 0.0;
  int var = -1;
  Function fn = Function::Sin;
  std::vector<Ast> children;
  std::uint64_t deps = 0;  // bit v set iff the subtree mentions variable v
};

inline constexpr int kMaxVariables = 63;

inline const char* function_name(Function fn) {
  switch (fn) {
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Tan: return "tan";
    case Function::Exp: return "exp";
    case Function::Log: return "log";
    case Function::Sqrt: return "sqrt";
    case Function::Abs: return "abs";
    case Function::Sign: return "sgn";
  }
  return "?";
}

/// Coordinate name of variable `var` in a space of dimension n:
/// 0 -> t, 1..n -> x1..xn, n+1..2n -> y1..yn.
inline std::string variable_name(int var, int n) {
  if (var == 0) return "t";
  if (var <= n) return "x" + std::to_string(var);
  return "y" + std::to_string(var - n);
}

inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline bool is_constant(const Ast& a) { return a->kind == NodeKind::Constant; }
inline bool is_constant(const Ast& a, double v) { return a->kind == NodeKind::Constant && a->value == v; }

inline bool is_integer(double e) { return std::isfinite(e) && e == std::floor(e) && std::abs(e) < 9.0e15; }

namespace detail {

inline Ast make(Node node) {
  for (const auto& c : node.children) node.deps |= c->deps;
  return std::make_shared<const Node>(std::move(node));
}

// Function value without domain checks; used for folding where a
// non-finite result simply blocks the fold.
inline bool apply_function(Function fn, double u, double& out) {
  switch (fn) {
    case Function::Sin: out = std::sin(u); break;
    case Function::Cos: out = std::cos(u); break;
    case Function::Tan:
      if (std::cos(u) == 0.0) return false;
      out = std::tan(u);
      break;
    case Function::Exp: out = std::exp(u); break;
    case Function::Log:
      if (!(u > 0.0)) return false;
      out = std::log(u);
      break;
    case Function::Sqrt:
      if (!(u >= 0.0)) return false;
      out = std::sqrt(u);
      break;
    case Function::Abs: out = std::abs(u); break;
    case Function::Sign:
      if (u == 0.0) return false;
      out = u > 0.0 ? 1.0 : -1.0;
      break;
  }
  return std::isfinite(out);
}

inline bool apply_power(double base, double e, double& out) {
  if (is_integer(e)) {
    if (base == 0.0 && e < 0.0) return false;
  } else if (!(base > 0.0)) {
    return false;
  }
  out = std::pow(base, e);
  return std::isfinite(out);
}

}  // namespace detail

inline Ast constant(double v) {
  Node n;
  n.kind = NodeKind::Constant;
  n.value = v;
  return detail::make(std::move(n));
}

inline Ast variable(int var) {
  if (var < 0 || var >= kMaxVariables) throw InvalidArgument("variable index out of supported range");
  Node n;
  n.kind = NodeKind::Variable;
  n.var = var;
  n.deps = std::uint64_t{1} << var;
  return detail::make(std::move(n));
}

inline Ast product(std::vector<Ast> factors);

inline Ast negate(const Ast& a) {
  if (a->kind == NodeKind::Constant) return constant(-a->value);
  if (a->kind == NodeKind::Negate) return a->children[0];
  if (a->kind == NodeKind::Product && is_constant(a->children[0])) {
    std::vector<Ast> f = a->children;
    f[0] = constant(-f[0]->value);
    return product(std::move(f));
  }
  Node n;
  n.kind = NodeKind::Negate;
  n.children = {a};
  return detail::make(std::move(n));
}

inline Ast sum(std::vector<Ast> terms) {
  std::vector<Ast> flat;
  double c = 0.0;
  for (auto& t : terms) {
    if (t->kind == NodeKind::Sum) {
      for (const auto& s : t->children) {
        if (s->kind == NodeKind::Constant) c += s->value;
        else flat.push_back(s);
      }
    } else if (t->kind == NodeKind::Constant) {
      c += t->value;
    } else {
      flat.push_back(std::move(t));
    }
  }
  if (c != 0.0) flat.push_back(constant(c));
  if (flat.empty()) return constant(0.0);
  if (flat.size() == 1) return flat[0];
  Node n;
  n.kind = NodeKind::Sum;
  n.children = std::move(flat);
  return detail::make(std::move(n));
}

inline Ast product(std::vector<Ast> factors) {
  std::vector<Ast> flat;
  double c = 1.0;
  for (auto& f : factors) {
    if (f->kind == NodeKind::Product) {
      for (const auto& s : f->children) {
        if (s->kind == NodeKind::Constant) c *= s->value;
        else flat.push_back(s);
      }
    } else if (f->kind == NodeKind::Constant) {
      c *= f->value;
    } else if (f->kind == NodeKind::Negate) {
      c = -c;
      flat.push_back(f->children[0]);
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (c == 0.0) return constant(0.0);
  if (flat.empty()) return constant(c);
  if (c == -1.0) return negate(product(std::move(flat)));
  if (c != 1.0) flat.insert(flat.begin(), constant(c));
  if (flat.size() == 1) return flat[0];
  Node n;
  n.kind = NodeKind::Product;
  n.children = std::move(flat);
  return detail::make(std::move(n));
}

inline Ast add(const Ast& a, const Ast& b) { return sum({a, b}); }
inline Ast sub(const Ast& a, const Ast& b) { return sum({a, negate(b)}); }
inline Ast mul(const Ast& a, const Ast& b) { return product({a, b}); }

inline Ast divide(const Ast& a, const Ast& b) {
  if (is_constant(b, 1.0)) return a;
  if (is_constant(a, 0.0)) return a;
  if (is_constant(b) && b->value != 0.0) return product({constant(1.0 / b->value), a});
  Node n;
  n.kind = NodeKind::Divide;
  n.children = {a, b};
  return detail::make(std::move(n));
}

inline Ast power(const Ast& base, double e) {
  if (e == 0.0) return constant(1.0);
  if (e == 1.0) return base;
  if (base->kind == NodeKind::Constant) {
    double out;
    if (detail::apply_power(base->value, e, out)) return constant(out);
  }
  Node n;
  n.kind = NodeKind::Power;
  n.value = e;
  n.children = {base};
  return detail::make(std::move(n));
}

inline Ast call(Function fn, const Ast& arg) {
  if (arg->kind == NodeKind::Constant) {
    double out = 0.0;
    if (detail::apply_function(fn, arg->value, out)) return constant(out);
  }
  Node n;
  n.kind = NodeKind::Call;
  n.fn = fn;
  n.children = {arg};
  return detail::make(std::move(n));
}

/// Fully parenthesized infix text that the parser reads back.
inline std::string print(const Ast& a, int n) {
  switch (a->kind) {
    case NodeKind::Constant: {
      std::string s = format_number(a->value);
      return a->value < 0.0 ? "(" + s + ")" : s;
    }
    case NodeKind::Variable: return variable_name(a->var, n);
    case NodeKind::Negate: return "(-" + print(a->children[0], n) + ")";
    case NodeKind::Sum: {
      std::string s = "(";
      for (std::size_t i = 0; i < a->children.size(); ++i) {
        if (i > 0) s += " + ";
        s += print(a->children[i], n);
      }
      return s + ")";
    }
    case NodeKind::Product: {
      std::string s = "(";
      for (std::size_t i = 0; i < a->children.size(); ++i) {
        if (i > 0) s += "*";
        s += print(a->children[i], n);
      }
      return s + ")";
    }
    case NodeKind::Divide: return "(" + print(a->children[0], n) + "/" + print(a->children[1], n) + ")";
    case NodeKind::Power:
      return "(" + print(a->children[0], n) + "^" +
             (a->value < 0.0 ? "(" + format_number(a->value) + ")" : format_number(a->value)) + ")";
    case NodeKind::Call: return std::string(function_name(a->fn)) + "(" + print(a->children[0], n) + ")";
  }
  return "?";
}

/// Evaluates `a` at the coordinate vector (t, x1..xn, y1..yn). Throws
/// DomainError naming the offending subexpression.
inline double evaluate(const Node& a, std::span<const double> vars, int n) {
  auto fail = [&](const char* reason) -> double {
    throw DomainError(reason, print(std::make_shared<const Node>(a), n));
  };
  switch (a.kind) {
    case NodeKind::Constant: return a.value;
    case NodeKind::Variable: return vars[static_cast<std::size_t>(a.var)];
    case NodeKind::Negate: return -evaluate(*a.children[0], vars, n);
    case NodeKind::Sum: {
      double s = 0.0;
      for (const auto& c : a.children) s += evaluate(*c, vars, n);
      return s;
    }
    case NodeKind::Product: {
      double p = 1.0;
      for (const auto& c : a.children) p *= evaluate(*c, vars, n);
      return p;
    }
    case NodeKind::Divide: {
      const double num = evaluate(*a.children[0], vars, n);
      const double den = evaluate(*a.children[1], vars, n);
      if (den == 0.0) return fail("division by zero");
      return num / den;
    }
    case NodeKind::Power: {
      const double b = evaluate(*a.children[0], vars, n);
      const double e = a.value;
      if (e == 2.0) return b * b;
      if (is_integer(e)) {
        if (b == 0.0 && e < 0.0) return fail("division by zero");
      } else if (!(b > 0.0)) {
        return fail("non-integer power of nonpositive base");
      }
      const double r = std::pow(b, e);
      if (!std::isfinite(r)) return fail("non-finite result");
      return r;
    }
    case NodeKind::Call: {
      const double u = evaluate(*a.children[0], vars, n);
      switch (a.fn) {
        case Function::Sin: return std::sin(u);
        case Function::Cos: return std::cos(u);
        case Function::Tan: {
          if (std::cos(u) == 0.0) return fail("tangent pole");
          return std::tan(u);
        }
        case Function::Exp: {
          const double r = std::exp(u);
          if (!std::isfinite(r)) return fail("non-finite result");
          return r;
        }
        case Function::Log:
          if (!(u > 0.0)) return fail("logarithm of nonpositive value");
          return std::log(u);
        case Function::Sqrt:
          if (!(u >= 0.0)) return fail("square root of negative value");
          return std::sqrt(u);
        case Function::Abs: return std::abs(u);
        case Function::Sign:
          if (u == 0.0) return fail("derivative of abs at zero");
          return u > 0.0 ? 1.0 : -1.0;
      }
    }
  }
  return fail("malformed node");
}

namespace detail {

class Differentiator {
 public:
  explicit Differentiator(int var) : var_(var), bit_(std::uint64_t{1} << var) {}

  Ast operator()(const Ast& a) {
    if ((a->deps & bit_) == 0) return constant(0.0);
    if (auto it = memo_.find(a.get()); it != memo_.end()) return it->second;
    Ast d = compute(a);
    memo_.emplace(a.get(), d);
    return d;
  }

 private:
  Ast compute(const Ast& a) {
    const auto& ch = a->children;
    switch (a->kind) {
      case NodeKind::Constant: return constant(0.0);
      case NodeKind::Variable: return constant(a->var == var_ ? 1.0 : 0.0);
      case NodeKind::Negate: return negate((*this)(ch[0]));
      case NodeKind::Sum: {
        std::vector<Ast> terms;
        for (const auto& c : ch) terms.push_back((*this)(c));
        return sum(std::move(terms));
      }
      case NodeKind::Product: {
        std::vector<Ast> terms;
        for (std::size_t i = 0; i < ch.size(); ++i) {
          Ast di = (*this)(ch[i]);
          if (is_constant(di, 0.0)) continue;
          std::vector<Ast> f = ch;
          f[i] = di;
          terms.push_back(product(std::move(f)));
        }
        return sum(std::move(terms));
      }
      case NodeKind::Divide: {
        const Ast& u = ch[0];
        const Ast& v = ch[1];
        Ast du = (*this)(u);
        Ast dv = (*this)(v);
        if (is_constant(dv, 0.0)) return divide(du, v);
        return divide(sub(mul(du, v), mul(u, dv)), power(v, 2.0));
      }
      case NodeKind::Power: {
        const double e = a->value;
        return product({constant(e), power(ch[0], e - 1.0), (*this)(ch[0])});
      }
      case NodeKind::Call: {
        const Ast& u = ch[0];
        Ast du = (*this)(u);
        switch (a->fn) {
          case Function::Sin: return mul(call(Function::Cos, u), du);
          case Function::Cos: return negate(mul(call(Function::Sin, u), du));
          case Function::Tan: return mul(power(call(Function::Cos, u), -2.0), du);
          case Function::Exp: return mul(a, du);
          case Function::Log: return divide(du, u);
          case Function::Sqrt: return divide(du, mul(constant(2.0), a));
          case Function::Abs: return mul(call(Function::Sign, u), du);
          case Function::Sign: return constant(0.0);
        }
      }
    }
    return constant(0.0);
  }

  int var_;
  std::uint64_t bit_;
  std::unordered_map<const Node*, Ast> memo_;
};

class Substituter {
 public:
  explicit Substituter(const std::vector<Ast>& repl) : repl_(repl) {
    for (std::size_t v = 0; v < repl.size(); ++v)
      if (repl[v]) mask_ |= std::uint64_t{1} << v;
  }

  Ast operator()(const Ast& a) {
    if ((a->deps & mask_) == 0) return a;
    if (auto it = memo_.find(a.get()); it != memo_.end()) return it->second;
    Ast r = compute(a);
    memo_.emplace(a.get(), r);
    return r;
  }

 private:
  Ast compute(const Ast& a) {
    std::vector<Ast> ch;
    for (const auto& c : a->children) ch.push_back((*this)(c));
    switch (a->kind) {
      case NodeKind::Constant: return a;
      case NodeKind::Variable: return repl_[static_cast<std::size_t>(a->var)];
      case NodeKind::Negate: return negate(ch[0]);
      case NodeKind::Sum: return sum(std::move(ch));
      case NodeKind::Product: return product(std::move(ch));
      case NodeKind::Divide: return divide(ch[0], ch[1]);
      case NodeKind::Power: return power(ch[0], a->value);
      case NodeKind::Call: return call(a->fn, ch[0]);
    }
    return a;
  }

  const std::vector<Ast>& repl_;
  std::uint64_t mask_ = 0;
  std::unordered_map<const Node*, Ast> memo_;
};

}  // namespace detail

/// Exact first partial derivative with respect to variable `var`.
inline Ast derivative(const Ast& a, int var) { return detail::Differentiator(var)(a); }

/// Replaces every variable v with `replacement[v]` (null entries are kept).
inline Ast substitute(const Ast& a, const std::vector<Ast>& replacement) {
  return detail::Substituter(replacement)(a);
}

inline std::size_t node_count(const Ast& a) {
  std::size_t c = 1;
  for (const auto& ch : a->children) c += node_count(ch);
  return c;
}

}  // namespace jetlag::expr
