#include "manapprox/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "manapprox/errors.hpp"

namespace manapprox {

// Recursive-descent parser producing the flat node array.
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, std::size_t variables)
      : text_(text), variables_(variables) {}

  Expression run() {
    expr_.variable_count_ = variables_;
    skip_space();
    expr_.root_ = parse_sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return std::move(expr_);
  }

 private:
  using Op = Expression::Op;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    throw ParseError(what, at);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::int32_t add(Expression::Node node) {
    expr_.nodes_.push_back(node);
    return static_cast<std::int32_t>(expr_.nodes_.size() - 1);
  }

  std::int32_t binary(Op op, std::int32_t lhs, std::int32_t rhs) {
    return add({op, 0.0, 0, lhs, rhs});
  }

  std::int32_t parse_sum() {
    std::int32_t lhs = parse_product();
    while (true) {
      if (accept('+')) {
        lhs = binary(Op::Add, lhs, parse_product());
      } else if (accept('-')) {
        lhs = binary(Op::Sub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  std::int32_t parse_product() {
    std::int32_t lhs = parse_unary();
    while (true) {
      if (accept('*')) {
        lhs = binary(Op::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = binary(Op::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  std::int32_t parse_unary() {
    if (accept('-')) return add({Op::Neg, 0.0, 0, parse_unary(), -1});
    return parse_power();
  }

  std::int32_t parse_power() {
    std::int32_t base = parse_primary();
    if (accept('^')) return binary(Op::Pow, base, parse_unary());
    return base;
  }

  std::int32_t parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    if (accept('(')) {
      std::int32_t inner = parse_sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::int32_t parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    double value = 0.0;
    auto [end, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || end != text_.data() + pos_) fail_at("malformed number", start);
    return add({Op::Number, value, 0, -1, -1});
  }

  std::int32_t parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(text_.substr(start, pos_ - start));
    if (name == "pi") return add({Op::Number, std::numbers::pi, 0, -1, -1});

    Op fn;
    if (name == "sin") {
      fn = Op::Sin;
    } else if (name == "cos") {
      fn = Op::Cos;
    } else if (name == "exp") {
      fn = Op::Exp;
    } else if (name == "sqrt") {
      fn = Op::Sqrt;
    } else {
      if (name.size() >= 2 && name[0] == 'x' && name[1] != '0') {
        std::size_t index = 0;
        auto [end, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
        if (ec == std::errc() && end == name.data() + name.size() && index >= 1 &&
            index <= variables_) {
          return add({Op::Variable, 0.0, static_cast<std::uint32_t>(index - 1), -1, -1});
        }
      }
      fail_at("unknown identifier '" + name + "'", start);
    }

    if (!accept('(')) fail("expected '(' after function '" + name + "'");
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ')') {
      fail_at("function '" + name + "' takes exactly 1 argument, got 0", start);
    }
    std::int32_t arg = parse_sum();
    std::size_t extra = 0;
    while (accept(',')) {
      parse_sum();
      ++extra;
    }
    if (extra > 0) {
      fail_at("function '" + name + "' takes exactly 1 argument, got " + std::to_string(extra + 1),
              start);
    }
    if (!accept(')')) fail("expected ')'");
    return add({fn, 0.0, 0, arg, -1});
  }

  std::string_view text_;
  std::size_t variables_;
  std::size_t pos_ = 0;
  Expression expr_;
};

Expression Expression::parse(std::string_view text, std::size_t variable_count) {
  return ExpressionParser(text, variable_count).run();
}

double Expression::evaluate(std::span<const double> x) const {
  if (x.size() < variable_count_) throw DimensionError("too few variables for expression");
  return eval_node(root_, x);
}

double Expression::eval_node(std::int32_t id, std::span<const double> x) const {
  const Node& n = nodes_[static_cast<std::size_t>(id)];
  switch (n.op) {
    case Op::Number:
      return n.value;
    case Op::Variable:
      return x[n.variable];
    case Op::Add:
      return eval_node(n.lhs, x) + eval_node(n.rhs, x);
    case Op::Sub:
      return eval_node(n.lhs, x) - eval_node(n.rhs, x);
    case Op::Mul:
      return eval_node(n.lhs, x) * eval_node(n.rhs, x);
    case Op::Div:
      return eval_node(n.lhs, x) / eval_node(n.rhs, x);
    case Op::Pow:
      return std::pow(eval_node(n.lhs, x), eval_node(n.rhs, x));
    case Op::Neg:
      return -eval_node(n.lhs, x);
    case Op::Sin:
      return std::sin(eval_node(n.lhs, x));
    case Op::Cos:
      return std::cos(eval_node(n.lhs, x));
    case Op::Exp:
      return std::exp(eval_node(n.lhs, x));
    case Op::Sqrt:
      return std::sqrt(eval_node(n.lhs, x));
  }
  return 0.0;
}

Interval Expression::enclose(const Box& box) const {
  if (box.dim() < variable_count_) throw DimensionError("box has too few coordinates");
  return enclose_node(root_, box);
}

Interval Expression::enclose_node(std::int32_t id, const Box& box) const {
  const Node& n = nodes_[static_cast<std::size_t>(id)];
  switch (n.op) {
    case Op::Number:
      return Interval::point(n.value);
    case Op::Variable:
      return box[n.variable];
    case Op::Add:
      return enclose_node(n.lhs, box) + enclose_node(n.rhs, box);
    case Op::Sub:
      return enclose_node(n.lhs, box) - enclose_node(n.rhs, box);
    case Op::Mul:
      return enclose_node(n.lhs, box) * enclose_node(n.rhs, box);
    case Op::Div:
      return enclose_node(n.lhs, box) / enclose_node(n.rhs, box);
    case Op::Pow:
      return pow(enclose_node(n.lhs, box), enclose_node(n.rhs, box));
    case Op::Neg:
      return -enclose_node(n.lhs, box);
    case Op::Sin:
      return sin(enclose_node(n.lhs, box));
    case Op::Cos:
      return cos(enclose_node(n.lhs, box));
    case Op::Exp:
      return exp(enclose_node(n.lhs, box));
    case Op::Sqrt:
      return sqrt(enclose_node(n.lhs, box));
  }
  return Interval::point(0.0);
}

std::string Expression::to_string() const {
  std::string out;
  print_node(root_, out);
  return out;
}

void Expression::print_node(std::int32_t id, std::string& out) const {
  const Node& n = nodes_[static_cast<std::size_t>(id)];
  auto binary = [&](const char* op) {
    out += '(';
    print_node(n.lhs, out);
    out += op;
    print_node(n.rhs, out);
    out += ')';
  };
  auto call = [&](const char* name) {
    out += name;
    out += '(';
    print_node(n.lhs, out);
    out += ')';
  };
  switch (n.op) {
    case Op::Number: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      break;
    }
    case Op::Variable:
      out += 'x';
      out += std::to_string(n.variable + 1);
      break;
    case Op::Add:
      binary(" + ");
      break;
    case Op::Sub:
      binary(" - ");
      break;
    case Op::Mul:
      binary(" * ");
      break;
    case Op::Div:
      binary(" / ");
      break;
    case Op::Pow:
      binary("^");
      break;
    case Op::Neg:
      out += "(-";
      print_node(n.lhs, out);
      out += ')';
      break;
    case Op::Sin:
      call("sin");
      break;
    case Op::Cos:
      call("cos");
      break;
    case Op::Exp:
      call("exp");
      break;
    case Op::Sqrt:
      call("sqrt");
      break;
  }
}

bool Expression::operator==(const Expression& other) const {
  return variable_count_ == other.variable_count_ && equal_nodes(root_, other, other.root_);
}

bool Expression::equal_nodes(std::int32_t a, const Expression& other, std::int32_t b) const {
  if (a < 0 || b < 0) return a == b;
  const Node& x = nodes_[static_cast<std::size_t>(a)];
  const Node& y = other.nodes_[static_cast<std::size_t>(b)];
  if (x.op != y.op) return false;
  if (x.op == Op::Number) return x.value == y.value;
  if (x.op == Op::Variable) return x.variable == y.variable;
  return equal_nodes(x.lhs, other, y.lhs) && equal_nodes(x.rhs, other, y.rhs);
}

ContinuousFunction function_from_expressions(std::vector<Expression> components,
                                             const Box& domain) {
  if (components.empty()) throw DimensionError("need at least one component expression");
  std::vector<Interval> ranges;
  for (const auto& e : components) {
    if (e.variable_count() > domain.dim()) {
      throw DimensionError("expression uses more variables than the domain has");
    }
    Interval r = e.enclose(domain);
    if (!std::isfinite(r.lo()) || !std::isfinite(r.hi())) {
      throw std::invalid_argument("expression '" + e.to_string() +
                                  "' has no bounded enclosure over the domain");
    }
    ranges.push_back(r);
  }
  const std::size_t m = components.size();
  auto eval = [exprs = std::move(components)](std::span<const double> x, std::span<double> y) {
    for (std::size_t c = 0; c < exprs.size(); ++c) y[c] = exprs[c].evaluate(x);
  };
  return ContinuousFunction(domain, m, std::move(eval), std::move(ranges));
}

}  // namespace manapprox
