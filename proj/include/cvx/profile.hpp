#pragma once

#include <memory>
#include <string>

#include "cvx/util.hpp"

namespace cvx {

// Scalar functions of t from a small closed-form grammar:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | atom
//   atom   := number | 't' | ('sin'|'cos'|'exp') '(' expr ')' | '(' expr ')'
// The derivative is formed symbolically at parse time.
class EnergyProfile {
 public:
  EnergyProfile() = default;
  static EnergyProfile parse(const std::string& expr);

  double value(double t) const;
  double derivative(double t) const;
  double min_value(int probe_points = 1024) const;
  double max_value(int probe_points = 1024) const;
  const std::string& expression() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
  std::shared_ptr<const Node> deriv_;
};

struct ProfileParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace cvx
