#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace rh {

enum class ErrorCode {
  Domain = 1,
  NonIntegrable,
  Divergent,
  ToleranceNotMet,
  Parameter,
  Config,
  Io,
};

const char *error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Points live in R^n with n <= 3; unused trailing coordinates are zero.
using Vec = std::array<double, 3>;
using PointFn = std::function<double(const Vec &)>;
using ScalarFn = std::function<double(double)>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

inline double norm(const Vec &x, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += x[i] * x[i];
  return std::sqrt(s);
}

inline Vec scaled(const Vec &x, double s) { return {x[0] * s, x[1] * s, x[2] * s}; }

inline void check_dim(int n) {
  if (n < 1 || n > 3) throw Error(ErrorCode::Parameter, "dimension must be 1, 2 or 3");
}

// |S^{n-1}| with counting measure on S^0.
inline double sphere_area(int n) {
  check_dim(n);
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

}  // namespace rh
