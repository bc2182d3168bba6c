#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "functions.hpp"
#include "weights.hpp"

namespace rh {

enum class ExtremalKind { Morrey, Herz, MorreyHerz };

struct ExtremalFamily {
  ExtremalKind kind;
  std::map<std::string, double> params;
  TestFunction function;
  std::optional<double> closed_form_norm;
  std::optional<double> closed_form_image_exponent;
  // ||f chi_k||_{q,w} in closed form; empty for the Morrey family
  std::function<double(int)> chunk;
};

// r^{(n+gamma) lambda} |Omega|^{p'-2} Omega
ExtremalFamily morrey_extremal(const AngularProfile &omega, const Weight &w, double lambda, double p);
// 0 on |x| < 1, |x|^{-alpha-gamma/q-n/q-2^{-m}} |Omega|^{q'-2} Omega on |x| >= 1
ExtremalFamily herz_extremal(const AngularProfile &omega, const Weight &w, double q, double alpha,
                             int m, double p);
// |x|^{-alpha-n/q-gamma/q+lambda} |Omega|^{q'-2} Omega
ExtremalFamily morrey_herz_extremal(const AngularProfile &omega, const Weight &w, double q,
                                    double alpha, double lambda, double p);

// S_m = {u > 0 : u >= 2^{-(m-1)}}
struct TruncationSet {
  double lower;
  bool contains(double u) const { return u >= lower; }
  bool subset_of(const TruncationSet &o) const { return lower >= o.lower; }
};
TruncationSet herz_truncation_set(int m);

}  // namespace rh
