#pragma once

#include <memory>
#include <string>
#include <vector>

namespace rh {

// Arithmetic expressions for config files: + - * / ^, unary minus,
// pow, exp, cos, sin, abs, indicator(a,b) on the first variable and
// indicator(v,a,b) on any other. Constants pi and inf.
class Expr {
 public:
  struct Node;

  static Expr parse(const std::string &src, const std::vector<std::string> &vars);

  double eval(const double *vars) const;
  double eval1(double v) const { return eval(&v); }
  // Constant endpoints of indicators on the first variable.
  const std::vector<double> &breakpoints() const { return breaks_; }
  const std::string &source() const { return src_; }

 private:
  std::shared_ptr<const Node> root_;
  std::vector<double> breaks_;
  std::string src_;
};

}  // namespace rh
