#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "manapprox/function.hpp"
#include "manapprox/geometry.hpp"

namespace manapprox {

/// Arithmetic expression over variables x1..xn.
///
/// Grammar (precedence high to low): calls sin/cos/exp/sqrt and parentheses,
/// `^` (right-associative), unary `-`, `*` `/`, `+` `-`. The exponent of `^`
/// may itself carry a unary minus, so `2^-1` is 0.5 while `-2^2` is -4.
/// The identifier `pi` denotes π.
class Expression {
 public:
  enum class Op : std::uint8_t { Number, Variable, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Sqrt };

  struct Node {
    Op op;
    double value = 0.0;
    std::uint32_t variable = 0;
    std::int32_t lhs = -1;
    std::int32_t rhs = -1;
  };

  /// Throws ParseError carrying the character offset of the problem.
  static Expression parse(std::string_view text, std::size_t variable_count);

  double evaluate(std::span<const double> x) const;
  /// Natural interval extension over the box.
  Interval enclose(const Box& box) const;
  /// Fully parenthesized form that parses back to an equal tree.
  std::string to_string() const;

  std::size_t variable_count() const { return variable_count_; }
  bool operator==(const Expression& other) const;

 private:
  friend class ExpressionParser;

  double eval_node(std::int32_t id, std::span<const double> x) const;
  Interval enclose_node(std::int32_t id, const Box& box) const;
  void print_node(std::int32_t id, std::string& out) const;
  bool equal_nodes(std::int32_t a, const Expression& other, std::int32_t b) const;

  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
  std::size_t variable_count_ = 0;
};

/// f(x) = (e_1(x), ..., e_m(x)) on `domain`, with range enclosures from
/// interval evaluation. Throws std::invalid_argument if an
/// enclosure is unbounded.
ContinuousFunction function_from_expressions(std::vector<Expression> components,
                                             const Box& domain);

}  // namespace manapprox
