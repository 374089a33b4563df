#pragma once

// A small expression language for the right-hand sides f(t, y, yp), h(t, y, yp).
//
//   expr    := term { ('+' | '-') term }
//   term    := unary { ('*' | '/') unary }
//   unary   := '-' unary | power
//   power   := primary [ '^' unary ]            (right associative)
//   primary := number | variable | func '(' args ')' | '(' expr ')'
//   variable:= 't' | 'y' | 'yp'
//   func    := exp | sqrt | abs | atan | sin | cos | log   (one argument)
//            | min | max                                   (two arguments)
//
// Numbers are decimal with optional fraction and exponent (1, 0.5, 2e-3).
// Multiplication is always explicit. Evaluation never clamps: sqrt/log of a
// negative argument is an EvalError.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tpbvp {

enum class Var : std::uint8_t { t, y, yp };
enum class UnaryFn : std::uint8_t { exp, sqrt, abs, atan, sin, cos, log };
enum class BinaryFn : std::uint8_t { min, max };
enum class BinOp : std::uint8_t { add, sub, mul, div, pow };

class Expr {
 public:
  enum class Kind : std::uint8_t { number, variable, neg, binary, call1, call2 };

  struct Node {
    Kind kind;
    double number = 0.0;
    Var var = Var::t;
    BinOp op = BinOp::add;
    UnaryFn fn1 = UnaryFn::exp;
    BinaryFn fn2 = BinaryFn::min;
    std::int32_t lhs = -1;  // operand of neg / call1, left of binary / call2
    std::int32_t rhs = -1;
  };

  /// Builders, used by the parser and by test generators.
  static Expr number(double v);
  static Expr variable(Var v);
  static Expr negate(const Expr& a);
  static Expr binary(BinOp op, const Expr& a, const Expr& b);
  static Expr call(UnaryFn fn, const Expr& a);
  static Expr call(BinaryFn fn, const Expr& a, const Expr& b);

  double eval(double t, double y, double yp) const;

  /// Text form with minimal parentheses; parse(to_string()) rebuilds the same tree.
  std::string to_string() const;

  /// Root node and arena access for structural walks.
  const Node& root() const { return nodes_[static_cast<std::size_t>(root_)]; }
  const Node& node(std::int32_t i) const { return nodes_[static_cast<std::size_t>(i)]; }
  std::size_t size() const noexcept { return nodes_.size(); }

  /// Structural equality (same tree shape, operators and literal bits).
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  Expr() = default;
  std::int32_t append(const Expr& sub);

  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
};

/// Parses `src`. Throws ParseError carrying a byte offset.
Expr parse(std::string_view src);

inline double eval(const Expr& e, double t, double y, double yp) { return e.eval(t, y, yp); }

/// Grid sampling of [0,1] x [0,bound] x [0,bound] with `per_axis` points per axis.
struct SamplingPlan {
  double bound = 10.0;
  int per_axis = 10;
};

struct NonnegativityReport {
  double min_value = 0.0;
  double t = 0.0, y = 0.0, yp = 0.0;  // location of the minimum (first one on ties)
  bool violation = false;
  std::size_t samples = 0;
};

/// Samples `e` over the plan and records the minimum. Evaluation errors are
/// rethrown as EvalError naming the sample coordinates.
NonnegativityReport check_nonnegative_sampled(const Expr& e, const SamplingPlan& plan);

}  // namespace tpbvp
