#include "tpbvp/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "tpbvp/errors.hpp"

namespace tpbvp {

namespace {

struct UnaryFnName {
  const char* name;
  UnaryFn fn;
};
constexpr UnaryFnName kUnaryFns[] = {
    {"exp", UnaryFn::exp},   {"sqrt", UnaryFn::sqrt}, {"abs", UnaryFn::abs}, {"atan", UnaryFn::atan},
    {"sin", UnaryFn::sin},   {"cos", UnaryFn::cos},   {"log", UnaryFn::log},
};

const char* name_of(UnaryFn fn) {
  for (const auto& e : kUnaryFns) {
    if (e.fn == fn) return e.name;
  }
  return "?";
}

const char* name_of(BinaryFn fn) { return fn == BinaryFn::min ? "min" : "max"; }

const char* name_of(Var v) {
  switch (v) {
    case Var::t: return "t";
    case Var::y: return "y";
    case Var::yp: return "yp";
  }
  return "?";
}

char symbol_of(BinOp op) {
  switch (op) {
    case BinOp::add: return '+';
    case BinOp::sub: return '-';
    case BinOp::mul: return '*';
    case BinOp::div: return '/';
    case BinOp::pow: return '^';
  }
  return '?';
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr run() {
    skip_ws();
    if (pos_ >= src_.size()) fail(pos_, "empty expression");
    Expr e = parse_expr();
    skip_ws();
    if (pos_ < src_.size()) fail(pos_, std::string("unexpected '") + src_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
    throw ParseError(ParseError::Kind::syntax, at, msg);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) {
      if (pos_ >= src_.size()) fail(pos_, std::string("expected '") + c + "' but input ended");
      fail(pos_, std::string("expected '") + c + "' but found '" + src_[pos_] + "'");
    }
    ++pos_;
  }

  // Guards recursion so hostile input produces an error instead of a stack overflow.
  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxDepth) p.fail(p.pos_, "expression nested too deeply");
    }
    ~DepthGuard() { --p.depth_; }
  };
  static constexpr int kMaxDepth = 200;

  Expr parse_expr() {
    DepthGuard guard(*this);
    Expr lhs = parse_term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        lhs = Expr::binary(BinOp::add, lhs, parse_term());
      } else if (peek('-')) {
        ++pos_;
        lhs = Expr::binary(BinOp::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    while (true) {
      if (peek('*')) {
        ++pos_;
        lhs = Expr::binary(BinOp::mul, lhs, parse_unary());
      } else if (peek('/')) {
        ++pos_;
        lhs = Expr::binary(BinOp::div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    DepthGuard guard(*this);
    if (peek('-')) {
      ++pos_;
      return Expr::negate(parse_unary());
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (peek('^')) {
      ++pos_;
      return Expr::binary(BinOp::pow, base, parse_unary());
    }
    return base;
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail(pos_, "expected an operand but input ended");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail(pos_, std::string("unexpected '") + c + "'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) fail(start, "malformed number");
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail(start, "malformed exponent in number");
    }
    double value = 0.0;
    const char* first = src_.data() + start;
    const char* last = src_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      fail(start, "number out of range: " + std::string(first, last));
    }
    return Expr::number(value);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view id = src_.substr(start, pos_ - start);

    for (const auto& e : kUnaryFns) {
      if (id == e.name) {
        auto args = parse_args(start, id, 1);
        return Expr::call(e.fn, args[0]);
      }
    }
    if (id == "min" || id == "max") {
      auto args = parse_args(start, id, 2);
      return Expr::call(id == "min" ? BinaryFn::min : BinaryFn::max, args[0], args[1]);
    }
    if (peek('(')) {
      throw ParseError(ParseError::Kind::unknown_identifier, start,
                       "unknown function '" + std::string(id) + "'");
    }
    if (id == "t") return Expr::variable(Var::t);
    if (id == "y") return Expr::variable(Var::y);
    if (id == "yp") return Expr::variable(Var::yp);
    throw ParseError(ParseError::Kind::unknown_identifier, start,
                     "unknown identifier '" + std::string(id) + "' (variables are t, y, yp)");
  }

  std::vector<Expr> parse_args(std::size_t at, std::string_view name, std::size_t arity) {
    if (!peek('(')) fail(at, "function '" + std::string(name) + "' requires '('");
    ++pos_;
    std::vector<Expr> args;
    if (!peek(')')) {
      args.push_back(parse_expr());
      while (peek(',')) {
        ++pos_;
        args.push_back(parse_expr());
      }
    }
    expect(')');
    if (args.size() != arity) {
      fail(at, "function '" + std::string(name) + "' takes " + std::to_string(arity) +
                   " argument(s), got " + std::to_string(args.size()));
    }
    return args;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

// Binding strength: atoms bind tightest.
int precedence(const Expr::Node& n) {
  switch (n.kind) {
    case Expr::Kind::binary:
      switch (n.op) {
        case BinOp::add:
        case BinOp::sub: return 1;
        case BinOp::mul:
        case BinOp::div: return 2;
        case BinOp::pow: return 4;
      }
      return 0;
    case Expr::Kind::neg: return 3;
    default: return 5;
  }
}

void print(const Expr& e, std::int32_t idx, std::string& out);

void print_child(const Expr& e, std::int32_t idx, bool parens, std::string& out) {
  if (parens) out += '(';
  print(e, idx, out);
  if (parens) out += ')';
}

void print(const Expr& e, std::int32_t idx, std::string& out) {
  const Expr::Node& n = e.node(idx);
  switch (n.kind) {
    case Expr::Kind::number: {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, n.number);
      out.append(buf, res.ptr);
      return;
    }
    case Expr::Kind::variable:
      out += name_of(n.var);
      return;
    case Expr::Kind::neg:
      out += '-';
      print_child(e, n.lhs, precedence(e.node(n.lhs)) < 3, out);
      return;
    case Expr::Kind::binary: {
      const int p = precedence(n);
      const int lp = precedence(e.node(n.lhs));
      const int rp = precedence(e.node(n.rhs));
      if (n.op == BinOp::pow) {
        print_child(e, n.lhs, lp <= 4, out);
        out += '^';
        print_child(e, n.rhs, rp < 3, out);
      } else {
        print_child(e, n.lhs, lp < p, out);
        out += symbol_of(n.op);
        print_child(e, n.rhs, rp <= p, out);
      }
      return;
    }
    case Expr::Kind::call1:
      out += name_of(n.fn1);
      out += '(';
      print(e, n.lhs, out);
      out += ')';
      return;
    case Expr::Kind::call2:
      out += name_of(n.fn2);
      out += '(';
      print(e, n.lhs, out);
      out += ',';
      print(e, n.rhs, out);
      out += ')';
      return;
  }
}

// ---------------------------------------------------------------------------
// Evaluator

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EvalError(std::string("non-finite result in ") + what);
  return v;
}

double eval_node(const Expr& e, std::int32_t idx, double t, double y, double yp) {
  const Expr::Node& n = e.node(idx);
  switch (n.kind) {
    case Expr::Kind::number:
      return n.number;
    case Expr::Kind::variable:
      return n.var == Var::t ? t : (n.var == Var::y ? y : yp);
    case Expr::Kind::neg:
      return -eval_node(e, n.lhs, t, y, yp);
    case Expr::Kind::binary: {
      const double a = eval_node(e, n.lhs, t, y, yp);
      const double b = eval_node(e, n.rhs, t, y, yp);
      switch (n.op) {
        case BinOp::add: return checked(a + b, "'+'");
        case BinOp::sub: return checked(a - b, "'-'");
        case BinOp::mul: return checked(a * b, "'*'");
        case BinOp::div:
          if (b == 0.0) throw EvalError("division by zero");
          return checked(a / b, "'/'");
        case BinOp::pow:
          if (a < 0.0 && b != std::trunc(b)) {
            throw EvalError("negative base raised to a non-integer power");
          }
          return checked(std::pow(a, b), "'^'");
      }
      break;
    }
    case Expr::Kind::call1: {
      const double a = eval_node(e, n.lhs, t, y, yp);
      switch (n.fn1) {
        case UnaryFn::exp: return checked(std::exp(a), "exp");
        case UnaryFn::sqrt:
          if (a < 0.0) throw EvalError("sqrt of negative argument " + std::to_string(a));
          return std::sqrt(a);
        case UnaryFn::abs: return std::fabs(a);
        case UnaryFn::atan: return std::atan(a);
        case UnaryFn::sin: return std::sin(a);
        case UnaryFn::cos: return std::cos(a);
        case UnaryFn::log:
          if (a <= 0.0) throw EvalError("log of non-positive argument " + std::to_string(a));
          return std::log(a);
      }
      break;
    }
    case Expr::Kind::call2: {
      const double a = eval_node(e, n.lhs, t, y, yp);
      const double b = eval_node(e, n.rhs, t, y, yp);
      return n.fn2 == BinaryFn::min ? std::fmin(a, b) : std::fmax(a, b);
    }
  }
  throw EvalError("corrupt expression node");
}

bool equal_nodes(const Expr& a, std::int32_t ia, const Expr& b, std::int32_t ib) {
  const Expr::Node& x = a.node(ia);
  const Expr::Node& y = b.node(ib);
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Expr::Kind::number:
      return std::memcmp(&x.number, &y.number, sizeof(double)) == 0;
    case Expr::Kind::variable:
      return x.var == y.var;
    case Expr::Kind::neg:
      return equal_nodes(a, x.lhs, b, y.lhs);
    case Expr::Kind::binary:
      return x.op == y.op && equal_nodes(a, x.lhs, b, y.lhs) && equal_nodes(a, x.rhs, b, y.rhs);
    case Expr::Kind::call1:
      return x.fn1 == y.fn1 && equal_nodes(a, x.lhs, b, y.lhs);
    case Expr::Kind::call2:
      return x.fn2 == y.fn2 && equal_nodes(a, x.lhs, b, y.lhs) && equal_nodes(a, x.rhs, b, y.rhs);
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// Expr

std::int32_t Expr::append(const Expr& sub) {
  const auto offset = static_cast<std::int32_t>(nodes_.size());
  for (Node n : sub.nodes_) {
    if (n.lhs >= 0) n.lhs += offset;
    if (n.rhs >= 0) n.rhs += offset;
    nodes_.push_back(n);
  }
  return sub.root_ + offset;
}

Expr Expr::number(double v) {
  if (!std::isfinite(v) || v < 0.0 || std::signbit(v)) {
    throw InputError("number literals must be finite and non-negative (use unary minus)");
  }
  Expr e;
  Node n{Kind::number};
  n.number = v;
  e.nodes_.push_back(n);
  e.root_ = 0;
  return e;
}

Expr Expr::variable(Var v) {
  Expr e;
  Node n{Kind::variable};
  n.var = v;
  e.nodes_.push_back(n);
  e.root_ = 0;
  return e;
}

Expr Expr::negate(const Expr& a) {
  Expr e;
  Node n{Kind::neg};
  n.lhs = e.append(a);
  e.nodes_.push_back(n);
  e.root_ = static_cast<std::int32_t>(e.nodes_.size() - 1);
  return e;
}

Expr Expr::binary(BinOp op, const Expr& a, const Expr& b) {
  Expr e;
  Node n{Kind::binary};
  n.op = op;
  n.lhs = e.append(a);
  n.rhs = e.append(b);
  e.nodes_.push_back(n);
  e.root_ = static_cast<std::int32_t>(e.nodes_.size() - 1);
  return e;
}

Expr Expr::call(UnaryFn fn, const Expr& a) {
  Expr e;
  Node n{Kind::call1};
  n.fn1 = fn;
  n.lhs = e.append(a);
  e.nodes_.push_back(n);
  e.root_ = static_cast<std::int32_t>(e.nodes_.size() - 1);
  return e;
}

Expr Expr::call(BinaryFn fn, const Expr& a, const Expr& b) {
  Expr e;
  Node n{Kind::call2};
  n.fn2 = fn;
  n.lhs = e.append(a);
  n.rhs = e.append(b);
  e.nodes_.push_back(n);
  e.root_ = static_cast<std::int32_t>(e.nodes_.size() - 1);
  return e;
}

double Expr::eval(double t, double y, double yp) const {
  if (!std::isfinite(t) || !std::isfinite(y) || !std::isfinite(yp)) {
    throw EvalError("non-finite argument");
  }
  return eval_node(*this, root_, t, y, yp);
}

std::string Expr::to_string() const {
  std::string out;
  print(*this, root_, out);
  return out;
}

bool operator==(const Expr& a, const Expr& b) { return equal_nodes(a, a.root_, b, b.root_); }

Expr parse(std::string_view src) { return Parser(src).run(); }

NonnegativityReport check_nonnegative_sampled(const Expr& e, const SamplingPlan& plan) {
  if (plan.per_axis < 1 || !(plan.bound >= 0.0) || !std::isfinite(plan.bound)) {
    throw InputError("sampling plan needs per_axis >= 1 and a finite bound >= 0");
  }
  auto axis = [&](int i, double hi) {
    return plan.per_axis == 1 ? 0.0 : hi * static_cast<double>(i) / (plan.per_axis - 1);
  };
  NonnegativityReport rep;
  rep.min_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < plan.per_axis; ++i) {
    const double t = axis(i, 1.0);
    for (int j = 0; j < plan.per_axis; ++j) {
      const double y = axis(j, plan.bound);
      for (int k = 0; k < plan.per_axis; ++k) {
        const double yp = axis(k, plan.bound);
        double v = 0.0;
        try {
          v = e.eval(t, y, yp);
        } catch (const EvalError& err) {
          throw EvalError(std::string(err.what()) + " at (t=" + std::to_string(t) +
                          ", y=" + std::to_string(y) + ", yp=" + std::to_string(yp) + ")");
        }
        ++rep.samples;
        if (v < rep.min_value) {
          rep.min_value = v;
          rep.t = t;
          rep.y = y;
          rep.yp = yp;
        }
      }
    }
  }
  rep.violation = rep.min_value < 0.0;
  return rep;
}

}  // namespace tpbvp
