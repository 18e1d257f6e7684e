#include "graphmass/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "graphmass/errors.hpp"

namespace graphmass {

class Expression::Parser {
 public:
  Parser(std::string_view text, Expression& out) : s_(text), out_(out) {}

  void run() {
    out_.root_ = parse_expr();
    skip_space();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    if (out_.dim_ == 0) out_.dim_ = std::max(max_var_, 1);
    if (max_var_ > out_.dim_)
      throw ParseError(max_var_pos_, "unknown identifier 'x" + std::to_string(max_var_) +
                                         "' (dimension is " + std::to_string(out_.dim_) + ")");
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int add(Node n) {
    out_.nodes_.push_back(n);
    return static_cast<int>(out_.nodes_.size()) - 1;
  }

  int binary(Op op, int l, int r) {
    Node n;
    n.op = op;
    n.lhs = l;
    n.rhs = r;
    return add(n);
  }

  int parse_expr() {
    int lhs = parse_term();
    for (;;) {
      if (accept('+'))
        lhs = binary(Op::add, lhs, parse_term());
      else if (accept('-'))
        lhs = binary(Op::sub, lhs, parse_term());
      else
        return lhs;
    }
  }

  int parse_term() {
    int lhs = parse_unary();
    for (;;) {
      if (accept('*'))
        lhs = binary(Op::mul, lhs, parse_unary());
      else if (accept('/'))
        lhs = binary(Op::div, lhs, parse_unary());
      else
        return lhs;
    }
  }

  int parse_unary() {
    if (accept('-')) {
      Node n;
      n.op = Op::neg;
      n.lhs = parse_unary();
      return add(n);
    }
    return parse_power();
  }

  int parse_power() {
    const int base = parse_primary();
    if (accept('^')) return binary(Op::pow, base, parse_unary());
    return base;
  }

  int parse_primary() {
    skip_space();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      const int inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  int parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t k = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_, ++k;
      return k;
    };
    std::size_t count = digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      const std::size_t mark = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = mark;  // not an exponent; let the caller reject 'e'
    }
    Node n;
    n.op = Op::constant;
    n.value = std::strtod(std::string(s_.substr(start, pos_ - start)).c_str(), nullptr);
    return add(n);
  }

  int parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string_view name = s_.substr(start, pos_ - start);

    static constexpr std::pair<std::string_view, Func> kFuncs[] = {
        {"sin", Func::sin}, {"cos", Func::cos},   {"exp", Func::exp},
        {"log", Func::log}, {"sqrt", Func::sqrt}, {"tanh", Func::tanh}};
    for (const auto& [fname, f] : kFuncs) {
      if (name != fname) continue;
      if (!accept('(')) throw ParseError(pos_, "expected '(' after function '" + std::string(name) + "'");
      Node n;
      n.op = Op::call;
      n.func = f;
      n.lhs = parse_expr();
      int args = 1;
      while (accept(',')) {
        parse_expr();
        ++args;
      }
      if (args != 1)
        throw ParseError(start, "function '" + std::string(name) + "' takes 1 argument, got " +
                                    std::to_string(args));
      if (!accept(')')) fail("expected ')'");
      return add(n);
    }

    if (name.size() >= 2 && name[0] == 'x' && name[1] != '0') {
      int k = 0;
      const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), k);
      if (ec == std::errc() && ptr == name.data() + name.size() && k >= 1) {
        skip_space();
        if (pos_ < s_.size() && s_[pos_] == '(')
          throw ParseError(start, "'" + std::string(name) + "' is not a function");
        if (k > max_var_) {
          max_var_ = k;
          max_var_pos_ = start;
        }
        Node n;
        n.op = Op::variable;
        n.var = k - 1;
        return add(n);
      }
    }
    throw ParseError(start, "unknown identifier '" + std::string(name) + "'");
  }

  std::string_view s_;
  Expression& out_;
  std::size_t pos_ = 0;
  int max_var_ = 0;
  std::size_t max_var_pos_ = 0;
};

Expression Expression::parse(std::string_view text, int dim) {
  Expression e;
  e.text_ = std::string(text);
  e.dim_ = dim;
  Parser(e.text_, e).run();
  return e;
}

namespace {

double real_pow(double a, double b) { return std::pow(a, b); }
Taylor2 real_pow(const Taylor2& a, const Taylor2& b) { return pow(a, b); }

template <class T>
T apply(int func, const T& a) {
  using std::cos, std::exp, std::log, std::sin, std::sqrt, std::tanh;
  switch (func) {
    case 0: return sin(a);
    case 1: return cos(a);
    case 2: return exp(a);
    case 3: return log(a);
    case 4: return sqrt(a);
    default: return tanh(a);
  }
}

template <class T>
T make_constant(double v, std::span<const T> x);

template <>
double make_constant(double v, std::span<const double>) {
  return v;
}

template <>
Taylor2 make_constant(double v, std::span<const Taylor2> x) {
  return Taylor2::constant(x.empty() ? 0 : x[0].dim(), v);
}

}  // namespace

template <class T>
T Expression::eval(int id, std::span<const T> x) const {
  const Node& n = nodes_[id];
  switch (n.op) {
    case Op::constant: return make_constant<T>(n.value, x);
    case Op::variable: return x[n.var];
    case Op::add: return eval(n.lhs, x) + eval(n.rhs, x);
    case Op::sub: return eval(n.lhs, x) - eval(n.rhs, x);
    case Op::mul: return eval(n.lhs, x) * eval(n.rhs, x);
    case Op::div: return eval(n.lhs, x) / eval(n.rhs, x);
    case Op::pow: return real_pow(eval(n.lhs, x), eval(n.rhs, x));
    case Op::neg: return -eval(n.lhs, x);
    case Op::call: return apply(static_cast<int>(n.func), eval(n.lhs, x));
  }
  return make_constant<T>(0.0, x);
}

double Expression::evaluate(std::span<const double> x) const {
  assert(static_cast<int>(x.size()) >= dim_);
  return eval(root_, x);
}

Taylor2 Expression::evaluate(std::span<const Taylor2> x) const {
  assert(static_cast<int>(x.size()) >= dim_);
  return eval(root_, x);
}

}  // namespace graphmass
