#pragma once

// Scalar expressions in the coordinates x1..xN.
//
// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          (right-associative)
//   primary := number | xK | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | exp | log | sqrt | tanh
//
// Unary minus binds looser than '^', so -x1^2 == -(x1^2).

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphmass/taylor.hpp"

namespace graphmass {

class Expression {
 public:
  // `dim` is the number of admissible coordinates; 0 infers it from the
  // largest xK present (at least 1). Throws ParseError.
  static Expression parse(std::string_view text, int dim = 0);

  int dim() const noexcept { return dim_; }
  const std::string& text() const noexcept { return text_; }

  double evaluate(std::span<const double> x) const;
  Taylor2 evaluate(std::span<const Taylor2> x) const;

 private:
  enum class Op { constant, variable, add, sub, mul, div, pow, neg, call };
  enum class Func { sin, cos, exp, log, sqrt, tanh };
  struct Node {
    Op op = Op::constant;
    double value = 0.0;
    int var = 0;
    Func func = Func::sin;
    int lhs = -1;
    int rhs = -1;
  };
  class Parser;

  template <class T>
  T eval(int node, std::span<const T> x) const;

  std::string text_;
  int dim_ = 0;
  int root_ = -1;
  std::vector<Node> nodes_;
};

}  // namespace graphmass
