#pragma once

#include <optional>
#include <string>

#include "functions.hpp"
#include "quadrature.hpp"
#include "weights.hpp"

namespace rh {

struct Window {
  int k_min = -24;
  int k_max = 24;
};

struct NormResult {
  double value = 0.0;  // truncated to the window
  int k_min = 0, k_max = 0;
  double tail_bound = 0.0;  // modelled increase from outside the window
  std::optional<double> attained_at;  // k0 for Morrey-Herz, R for Morrey
  bool divergent = false;
  double grid_factor = 1.0;  // Morrey grid: bound on sup undershoot between grid radii

  double with_tail() const { return value + tail_bound; }
};

enum class SpaceKind {
  Lq,
  CentralMorrey,
  Herz,
  MorreyHerz,
  TwoWeightMorrey,
  TwoWeightHerz,
  TwoWeightMorreyHerz,
};
const char *space_kind_name(SpaceKind k);
SpaceKind space_kind_from_name(const std::string &s);

struct SpaceSpec {
  SpaceKind kind = SpaceKind::Lq;
  std::optional<double> p, q, alpha, lambda;
  std::optional<Weight> w1, w2;

  // Range checks plus rejection of parameters the kind does not use.
  void validate() const;
};

NormResult evaluate_norm(const SpaceSpec &spec, const TestFunction &f, const Window &win = {});

// Region::shell(0, inf) is the whole space.
double lq_norm(const TestFunction &f, double q, const Weight &w, const Region &region);
NormResult central_morrey_norm(const TestFunction &f, double p, double lambda, const Weight &w,
                               const Window &win = {});
NormResult herz_norm(const TestFunction &f, double alpha, double p, double q, const Weight &w,
                     const Window &win = {});
NormResult morrey_herz_norm(const TestFunction &f, double alpha, double lambda, double p, double q,
                            const Weight &w, const Window &win = {});
NormResult two_weight_morrey_norm(const TestFunction &f, double p, double lambda, const Weight &w1,
                                  const Weight &w2, const Window &win = {});
NormResult two_weight_herz_norm(const TestFunction &f, double alpha, double p, double q,
                                const Weight &w1, const Weight &w2, const Window &win = {});
NormResult two_weight_morrey_herz_norm(const TestFunction &f, double alpha, double lambda, double p,
                                       double q, const Weight &w1, const Weight &w2,
                                       const Window &win = {});

// ||f chi_k||_{q,w}
double annulus_norm(const TestFunction &f, double q, const Weight &w, int k);

}  // namespace rh
