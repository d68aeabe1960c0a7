#pragma once

#include <cstdint>
#include <string>

#include "graphon/core.hpp"

namespace graphon {

enum class CutMethod { Exact, HeuristicSpectral, HeuristicL1 };

const char* to_string(CutMethod m);

/// lower <= ||K||_cut <= upper, with +-1 witnesses attaining `lower`.
/// Cut norm convention: sup over |f|,|g| <= 1 of |sum_xy w_x w_y f(x) K(x,y) g(y)|.
struct CutNormEstimate {
  double lower = 0.0;
  double upper = 0.0;
  Vector witness_f;
  Vector witness_g;
  CutMethod method = CutMethod::Exact;
};

struct CutNormConfig {
  int exact_limit = 22;
  int restarts = 32;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Signed weighted bilinear form f^* K g.
double bilinear_form(const Vector& f, const Kernel& kernel, const Vector& g);

/// Enumerates half of {-1,+1}^n for g and takes the best f per g.
CutNormEstimate cutnorm_exact(const Kernel& kernel, int max_n = 22, int threads = 1);

/// Alternating sign ascent from `restarts` random starts. Reproducible per
/// (seed, restarts) regardless of thread count.
CutNormEstimate cutnorm_heuristic(const Kernel& kernel, int restarts, std::uint64_t seed,
                                  int threads = 1);

/// Exact when n <= exact_limit, heuristic otherwise.
CutNormEstimate cutnorm_bracket(const Kernel& kernel, const CutNormConfig& config = {});

}  // namespace graphon
