#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "graphon/error.hpp"

namespace graphon {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Atom permutation: position x is sent to perm[x].
using Permutation = std::vector<int>;

/// Finite probability space: n atoms with strictly positive weights summing to 1.
class DiscreteSpace {
 public:
  static constexpr double kSumTolerance = 1e-12;
  static constexpr double kMinWeight = 1e-14;

  explicit DiscreteSpace(Vector weights);
  static DiscreteSpace uniform(int n);

  int size() const { return static_cast<int>(weights_.size()); }
  const Vector& weights() const { return weights_; }
  double weight(int i) const { return weights_[i]; }
  bool is_uniform() const;

  friend bool operator==(const DiscreteSpace& a, const DiscreteSpace& b) {
    return a.weights_ == b.weights_;
  }

 private:
  Vector weights_;
};

/// Symmetric real matrix over a DiscreteSpace. values(i,j) == values(j,i) bit for bit.
class Kernel {
 public:
  static constexpr double kSilentAsymmetry = 1e-12;
  static constexpr double kMaxAsymmetry = 1e-9;

  /// Symmetrizes as (A + A^T)/2; rejects skew above kMaxAsymmetry.
  Kernel(DiscreteSpace space, const Matrix& values);

  const DiscreteSpace& space() const { return space_; }
  const Matrix& values() const { return values_; }
  int size() const { return space_.size(); }
  double operator()(int i, int j) const { return values_(i, j); }

  /// Largest |A(i,j) - A(j,i)| absorbed by symmetrization at construction.
  double absorbed_asymmetry() const { return absorbed_asymmetry_; }
  /// True when the absorbed skew exceeded the silent threshold.
  bool symmetrization_warning() const { return absorbed_asymmetry_ > kSilentAsymmetry; }

  static Kernel zero(const DiscreteSpace& space);
  static Kernel constant(const DiscreteSpace& space, double p);

  Kernel operator+(const Kernel& other) const;
  Kernel operator-(const Kernel& other) const;
  Kernel scaled(double c) const;
  Kernel shifted(double c) const;

 private:
  DiscreteSpace space_;
  Matrix values_;
  double absorbed_asymmetry_ = 0.0;
};

/// Kernel constant on the blocks of a partition of the atoms.
class StepFunction {
 public:
  StepFunction(DiscreteSpace space, std::vector<int> part_of, Matrix block);

  const DiscreteSpace& space() const { return space_; }
  const std::vector<int>& part_of() const { return part_of_; }
  const Matrix& block() const { return block_; }
  const Vector& part_weights() const { return part_weights_; }
  int parts() const { return static_cast<int>(block_.rows()); }

 private:
  DiscreteSpace space_;
  std::vector<int> part_of_;
  Matrix block_;
  Vector part_weights_;
};

/// Simple graph on vertices 0..k-1 (the file format is 1-based).
class SimpleGraph {
 public:
  SimpleGraph(int k, std::vector<std::pair<int, int>> edges);

  int vertices() const { return k_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  static SimpleGraph edge();
  static SimpleGraph path(int k);
  static SimpleGraph cycle(int k);
  static SimpleGraph complete(int k);
  static SimpleGraph disjoint_union(const SimpleGraph& a, const SimpleGraph& b);

 private:
  int k_;
  std::vector<std::pair<int, int>> edges_;
};

/// Group generated by weight-preserving atom permutations.
class PermutationAction {
 public:
  PermutationAction(DiscreteSpace space, std::vector<Permutation> generators);

  const DiscreteSpace& space() const { return space_; }
  const std::vector<Permutation>& generators() const { return generators_; }

 private:
  DiscreteSpace space_;
  std::vector<Permutation> generators_;
};

enum class Norm { L1, L2, Linf };

Kernel kernel_from_matrix(const Matrix& values, std::optional<Vector> weights = std::nullopt);
Kernel expand_step(const StepFunction& sf);
StepFunction quotient_average(const Kernel& kernel, std::span<const int> part_of);
Kernel apply_permutation(const Kernel& kernel, std::span<const int> g);
double weighted_norm(const Kernel& kernel, Norm which);
double weighted_mean(const Kernel& kernel);

bool is_permutation(std::span<const int> g);
Permutation compose(std::span<const int> a, std::span<const int> b);
Permutation inverse(std::span<const int> g);

}  // namespace graphon
