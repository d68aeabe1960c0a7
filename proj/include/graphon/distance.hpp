#pragma once

#include <cstdint>

#include "graphon/core.hpp"
#include "graphon/cutnorm.hpp"

namespace graphon {

enum class DistanceNorm { L1, L2, Cut };

const char* to_string(DistanceNorm n);

/// Both step functions laid out on m uniform atoms; part p of each occupies a
/// consecutive run of round(w_p * m) atoms.
struct CommonRefinement {
  int m = 0;
  std::vector<int> labels1;
  std::vector<int> labels2;
  Kernel k1;
  Kernel k2;
};

CommonRefinement common_refinement(const StepFunction& sf1, const StepFunction& sf2,
                                   int max_atoms = 64);

struct DistanceBracket {
  double lower = 0.0;
  double upper = 0.0;
  DistanceNorm norm = DistanceNorm::L1;
  /// psi on the refined space: the upper bound is attained by k1^psi - k2.
  Permutation alignment;
  int refinement_size = 0;
  bool exact = false;
  /// Cut-norm lower bound from density gaps; a counting-lemma estimate, not a proof.
  bool lower_is_heuristic_certificate = false;
};

struct DistanceConfig {
  int max_atoms = 64;
  int exact_atoms = 8;
  int starts = 16;
  std::uint64_t seed = 0;
  int threads = 1;
  CutNormConfig cut;
};

/// Bracket on delta_norm(sf1, sf2) = inf_psi || sf1^psi - sf2 ||, psi over
/// permutations of the common refinement.
DistanceBracket delta_bracket(const StepFunction& sf1, const StepFunction& sf2, DistanceNorm norm,
                              const DistanceConfig& config = {});

}  // namespace graphon
