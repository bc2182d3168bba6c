#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "common.hpp"

namespace rh {

struct Expr::Node {
  enum Kind { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Cos, Sin, Abs, Ind } kind;
  double value = 0.0;
  int var = 0;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Expr::Node::Kind k, std::vector<NodePtr> args = {}, double v = 0.0, int var = 0) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  n->args = std::move(args);
  n->value = v;
  n->var = var;
  return n;
}

class Parser {
 public:
  Parser(const std::string &s, const std::vector<std::string> &vars) : s_(s), vars_(vars) {}

  NodePtr parse_all(std::vector<double> &breaks) {
    breaks_ = &breaks;
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string &msg) const {
    throw Error(ErrorCode::Config,
                "expression '" + s_ + "': " + msg + " at column " + std::to_string(pos_ + 1));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+')) lhs = make(Expr::Node::Add, {lhs, term()});
      else if (eat('-')) lhs = make(Expr::Node::Sub, {lhs, term()});
      else return lhs;
    }
  }
  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (eat('*')) lhs = make(Expr::Node::Mul, {lhs, unary()});
      else if (eat('/')) lhs = make(Expr::Node::Div, {lhs, unary()});
      else return lhs;
    }
  }
  NodePtr unary() {
    if (eat('-')) return make(Expr::Node::Neg, {unary()});
    if (eat('+')) return unary();
    NodePtr base = primary();
    if (eat('^')) return make(Expr::Node::Pow, {base, unary()});
    return base;
  }
  static bool constant(const NodePtr &n, double &v) {
    if (n->kind == Expr::Node::Num) {
      v = n->value;
      return true;
    }
    if (n->kind == Expr::Node::Neg && constant(n->args[0], v)) {
      v = -v;
      return true;
    }
    return false;
  }
  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (eat('(')) {
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      char *end = nullptr;
      const double v = std::strtod(s_.c_str() + pos_, &end);
      if (end == s_.c_str() + pos_) fail("bad number");
      pos_ = static_cast<std::size_t>(end - s_.c_str());
      return make(Expr::Node::Num, {}, v);
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected character");
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string id = s_.substr(start, pos_ - start);
    if (eat('(')) {
      std::vector<NodePtr> args;
      if (!eat(')')) {
        args.push_back(expr());
        while (eat(',')) args.push_back(expr());
        expect(')');
      }
      return call(id, std::move(args));
    }
    if (id == "pi") return make(Expr::Node::Num, {}, kPi);
    if (id == "inf") return make(Expr::Node::Num, {}, kInf);
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == id) return make(Expr::Node::Var, {}, 0.0, static_cast<int>(i));
    fail("unknown name '" + id + "'");
  }
  NodePtr call(const std::string &id, std::vector<NodePtr> args) {
    auto arity = [&](std::size_t k) {
      if (args.size() != k) fail(id + " takes " + std::to_string(k) + " argument(s)");
    };
    if (id == "pow") {
      arity(2);
      return make(Expr::Node::Pow, std::move(args));
    }
    if (id == "exp" || id == "cos" || id == "sin" || id == "abs") {
      arity(1);
      const auto k = id == "exp" ? Expr::Node::Exp
                   : id == "cos" ? Expr::Node::Cos
                   : id == "sin" ? Expr::Node::Sin
                                 : Expr::Node::Abs;
      return make(k, std::move(args));
    }
    if (id == "indicator") {
      if (args.size() == 2) {
        if (vars_.empty()) fail("indicator(a,b) needs a variable");
        double a, b;
        if (constant(args[0], a)) breaks_->push_back(a);
        if (constant(args[1], b)) breaks_->push_back(b);
        args.insert(args.begin(), make(Expr::Node::Var, {}, 0.0, 0));
      }
      if (args.size() != 3) fail("indicator takes (a,b) or (v,a,b)");
      return make(Expr::Node::Ind, std::move(args));
    }
    fail("unknown function '" + id + "'");
  }

  const std::string &s_;
  const std::vector<std::string> &vars_;
  std::vector<double> *breaks_ = nullptr;
  std::size_t pos_ = 0;
};

double eval_node(const Expr::Node &n, const double *v) {
  using K = Expr::Node;
  switch (n.kind) {
    case K::Num: return n.value;
    case K::Var: return v[n.var];
    case K::Neg: return -eval_node(*n.args[0], v);
    case K::Add: return eval_node(*n.args[0], v) + eval_node(*n.args[1], v);
    case K::Sub: return eval_node(*n.args[0], v) - eval_node(*n.args[1], v);
    case K::Mul: {
      const double a = eval_node(*n.args[0], v);
      if (a == 0.0) return 0.0;
      return a * eval_node(*n.args[1], v);
    }
    case K::Div: return eval_node(*n.args[0], v) / eval_node(*n.args[1], v);
    case K::Pow: return std::pow(eval_node(*n.args[0], v), eval_node(*n.args[1], v));
    case K::Exp: return std::exp(eval_node(*n.args[0], v));
    case K::Cos: return std::cos(eval_node(*n.args[0], v));
    case K::Sin: return std::sin(eval_node(*n.args[0], v));
    case K::Abs: return std::fabs(eval_node(*n.args[0], v));
    case K::Ind: {
      const double x = eval_node(*n.args[0], v);
      return (x >= eval_node(*n.args[1], v) && x <= eval_node(*n.args[2], v)) ? 1.0 : 0.0;
    }
  }
  return 0.0;
}

}  // namespace

Expr Expr::parse(const std::string &src, const std::vector<std::string> &vars) {
  Expr e;
  e.src_ = src;
  Parser p(src, vars);
  e.root_ = p.parse_all(e.breaks_);
  return e;
}

double Expr::eval(const double *vars) const { return eval_node(*root_, vars); }

}  // namespace rh
