#include "cvx/profile.hpp"

#include <cctype>
#include <cmath>

namespace cvx {

struct EnergyProfile::Node {
  enum Kind { kConst, kVar, kAdd, kSub, kMul, kDiv, kNeg, kSin, kCos, kExp };
  Kind kind;
  double value = 0;
  std::shared_ptr<const Node> a, b;

  static std::shared_ptr<const Node> constant(double v) {
    auto n = std::make_shared<Node>();
    n->kind = kConst;
    n->value = v;
    return n;
  }
  static std::shared_ptr<const Node> make(Kind k,
                                          std::shared_ptr<const Node> a,
                                          std::shared_ptr<const Node> b = {}) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }
};

namespace {
using Node = EnergyProfile::Node;
using P = std::shared_ptr<const Node>;

double eval(const P& n, double t) {
  switch (n->kind) {
    case Node::kConst: return n->value;
    case Node::kVar: return t;
    case Node::kAdd: return eval(n->a, t) + eval(n->b, t);
    case Node::kSub: return eval(n->a, t) - eval(n->b, t);
    case Node::kMul: return eval(n->a, t) * eval(n->b, t);
    case Node::kDiv: return eval(n->a, t) / eval(n->b, t);
    case Node::kNeg: return -eval(n->a, t);
    case Node::kSin: return std::sin(eval(n->a, t));
    case Node::kCos: return std::cos(eval(n->a, t));
    case Node::kExp: return std::exp(eval(n->a, t));
  }
  return 0;
}

P diff(const P& n) {
  switch (n->kind) {
    case Node::kConst: return Node::constant(0);
    case Node::kVar: return Node::constant(1);
    case Node::kAdd: return Node::make(Node::kAdd, diff(n->a), diff(n->b));
    case Node::kSub: return Node::make(Node::kSub, diff(n->a), diff(n->b));
    case Node::kMul:
      return Node::make(Node::kAdd, Node::make(Node::kMul, diff(n->a), n->b),
                        Node::make(Node::kMul, n->a, diff(n->b)));
    case Node::kDiv:
      return Node::make(
          Node::kDiv,
          Node::make(Node::kSub, Node::make(Node::kMul, diff(n->a), n->b),
                     Node::make(Node::kMul, n->a, diff(n->b))),
          Node::make(Node::kMul, n->b, n->b));
    case Node::kNeg: return Node::make(Node::kNeg, diff(n->a));
    case Node::kSin:
      return Node::make(Node::kMul, Node::make(Node::kCos, n->a), diff(n->a));
    case Node::kCos:
      return Node::make(Node::kNeg, Node::make(Node::kMul,
                                               Node::make(Node::kSin, n->a),
                                               diff(n->a)));
    case Node::kExp:
      return Node::make(Node::kMul, Node::make(Node::kExp, n->a), diff(n->a));
  }
  return Node::constant(0);
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  P parse() {
    P e = expr();
    skip();
    if (pos_ != s_.size())
      throw ProfileParseError("profile: trailing input at position " +
                              std::to_string(pos_));
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace(unsigned(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  P expr() {
    P e = term();
    for (;;) {
      if (eat('+'))
        e = Node::make(Node::kAdd, e, term());
      else if (eat('-'))
        e = Node::make(Node::kSub, e, term());
      else
        return e;
    }
  }

  P term() {
    P e = unary();
    for (;;) {
      if (eat('*'))
        e = Node::make(Node::kMul, e, unary());
      else if (eat('/'))
        e = Node::make(Node::kDiv, e, unary());
      else
        return e;
    }
  }

  P unary() {
    if (eat('-')) return Node::make(Node::kNeg, unary());
    return atom();
  }

  P atom() {
    skip();
    if (pos_ >= s_.size()) throw ProfileParseError("profile: unexpected end");
    char c = s_[pos_];
    if (std::isdigit(unsigned(c)) || c == '.') {
      std::size_t used = 0;
      double v = std::stod(s_.substr(pos_), &used);
      pos_ += used;
      return Node::constant(v);
    }
    if (std::isalpha(unsigned(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(unsigned(s_[pos_]))) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "t") return Node::make(Node::kVar, nullptr);
      Node::Kind k;
      if (name == "sin")
        k = Node::kSin;
      else if (name == "cos")
        k = Node::kCos;
      else if (name == "exp")
        k = Node::kExp;
      else
        throw ProfileParseError("profile: unknown identifier '" + name + "'");
      if (!eat('(')) throw ProfileParseError("profile: expected '(' after " + name);
      P arg = expr();
      if (!eat(')')) throw ProfileParseError("profile: missing ')'");
      return Node::make(k, arg);
    }
    if (eat('(')) {
      P e = expr();
      if (!eat(')')) throw ProfileParseError("profile: missing ')'");
      return e;
    }
    throw ProfileParseError(std::string("profile: unexpected character '") +
                            c + "'");
  }
};
}  // namespace

EnergyProfile EnergyProfile::parse(const std::string& expr) {
  EnergyProfile p;
  p.text_ = expr;
  p.root_ = Parser(expr).parse();
  p.deriv_ = diff(p.root_);
  return p;
}

double EnergyProfile::value(double t) const {
  require(bool(root_), "profile: empty");
  return eval(root_, t);
}

double EnergyProfile::derivative(double t) const {
  require(bool(deriv_), "profile: empty");
  return eval(deriv_, t);
}

double EnergyProfile::min_value(int probe_points) const {
  double m = value(0);
  for (int i = 1; i < probe_points; ++i)
    m = std::min(m, value(double(i) / (probe_points - 1)));
  return m;
}

double EnergyProfile::max_value(int probe_points) const {
  double m = value(0);
  for (int i = 1; i < probe_points; ++i)
    m = std::max(m, value(double(i) / (probe_points - 1)));
  return m;
}

}  // namespace cvx
