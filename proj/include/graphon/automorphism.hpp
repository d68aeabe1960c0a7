#pragma once

#include <vector>

#include "graphon/core.hpp"

namespace graphon {

/// Generators of Aut(K) together with the stabilizer chain they were built from.
/// |Aut(K)| = product of orbit_sizes (orbit of base[i] in the stabilizer of base[0..i)).
struct AutomorphismGroup {
  PermutationAction action;
  std::vector<int> base;
  std::vector<int> orbit_sizes;

  double order() const;
};

struct AutomorphismConfig {
  int max_atoms = 64;
  double value_tolerance = 1e-12;
};

/// Full automorphism group of a weighted kernel: permutations g with
/// K(g x, g y) == K(x, y) and w(g x) == w(x). Color refinement plus
/// individualization search over a stabilizer chain.
AutomorphismGroup automorphisms(const Kernel& kernel, const AutomorphismConfig& config = {});

/// True when g maps K onto itself within `tol` entrywise.
bool is_automorphism(const Kernel& kernel, std::span<const int> g, double tol = 1e-12);

}  // namespace graphon
