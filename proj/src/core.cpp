#include "graphon/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace graphon {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::Asymmetric: return "Asymmetric";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyPart: return "EmptyPart";
    case ErrorCode::WeightMismatch: return "WeightMismatch";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::ThresholdSplitsCluster: return "ThresholdSplitsCluster";
    case ErrorCode::AllZeroSpectrum: return "AllZeroSpectrum";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NonDecreasingF: return "NonDecreasingF";
    case ErrorCode::GridOverflow: return "GridOverflow";
    case ErrorCode::TooManyVertices: return "TooManyVertices";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NotEven: return "NotEven";
    case ErrorCode::EntriesOutOfRange: return "EntriesOutOfRange";
    case ErrorCode::ActionDoesNotStabilize: return "ActionDoesNotStabilize";
    case ErrorCode::IrrationalWeights: return "IrrationalWeights";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// DiscreteSpace

DiscreteSpace::DiscreteSpace(Vector weights) : weights_(std::move(weights)) {
  if (weights_.size() == 0) {
    throw Error(ErrorCode::InvalidWeights, "space needs at least one atom");
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] < kMinWeight) {
      throw Error(ErrorCode::InvalidWeights,
                  "atom " + std::to_string(i) + " has non-positive weight");
    }
  }
  if (std::abs(weights_.sum() - 1.0) > kSumTolerance) {
    throw Error(ErrorCode::InvalidWeights, "weights do not sum to 1");
  }
}

DiscreteSpace DiscreteSpace::uniform(int n) {
  if (n <= 0) throw Error(ErrorCode::InvalidWeights, "atom count must be positive");
  return DiscreteSpace(Vector::Constant(n, 1.0 / n));
}

bool DiscreteSpace::is_uniform() const {
  return (weights_.array() == weights_[0]).all();
}

// ---------------------------------------------------------------------------
// Kernel

Kernel::Kernel(DiscreteSpace space, const Matrix& values) : space_(std::move(space)) {
  if (values.rows() != values.cols()) {
    throw Error(ErrorCode::NonSquare, "kernel matrix must be square");
  }
  if (values.rows() != space_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "kernel size does not match space");
  }
  if (!values.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "kernel has non-finite entries");
  }
  absorbed_asymmetry_ = (values - values.transpose()).cwiseAbs().maxCoeff();
  if (absorbed_asymmetry_ > kMaxAsymmetry) {
    throw Error(ErrorCode::Asymmetric,
                "skew " + std::to_string(absorbed_asymmetry_) + " exceeds 1e-9");
  }
  // a+b == b+a in IEEE arithmetic, so the stored matrix is exactly symmetric.
  values_ = 0.5 * (values + values.transpose());
}

Kernel Kernel::zero(const DiscreteSpace& space) {
  return Kernel(space, Matrix::Zero(space.size(), space.size()));
}

Kernel Kernel::constant(const DiscreteSpace& space, double p) {
  return Kernel(space, Matrix::Constant(space.size(), space.size(), p));
}

Kernel Kernel::operator+(const Kernel& other) const {
  if (!(space_ == other.space_)) throw Error(ErrorCode::DimensionMismatch, "spaces differ");
  return Kernel(space_, values_ + other.values_);
}

Kernel Kernel::operator-(const Kernel& other) const {
  if (!(space_ == other.space_)) throw Error(ErrorCode::DimensionMismatch, "spaces differ");
  return Kernel(space_, values_ - other.values_);
}

Kernel Kernel::scaled(double c) const { return Kernel(space_, c * values_); }

Kernel Kernel::shifted(double c) const {
  return Kernel(space_, values_.array() + c);
}

// ---------------------------------------------------------------------------
// StepFunction

StepFunction::StepFunction(DiscreteSpace space, std::vector<int> part_of, Matrix block)
    : space_(std::move(space)), part_of_(std::move(part_of)), block_(std::move(block)) {
  if (static_cast<int>(part_of_.size()) != space_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one part label per atom required");
  }
  if (block_.rows() != block_.cols()) {
    throw Error(ErrorCode::NonSquare, "block matrix must be square");
  }
  const int s = static_cast<int>(block_.rows());
  if ((block_ - block_.transpose()).cwiseAbs().maxCoeff() > Kernel::kMaxAsymmetry) {
    throw Error(ErrorCode::Asymmetric, "block matrix must be symmetric");
  }
  block_ = 0.5 * (block_ + block_.transpose()).eval();
  part_weights_ = Vector::Zero(s);
  for (int a = 0; a < space_.size(); ++a) {
    const int p = part_of_[a];
    if (p < 0 || p >= s) {
      throw Error(ErrorCode::InvalidArgument, "part label out of range");
    }
    part_weights_[p] += space_.weight(a);
  }
  for (int p = 0; p < s; ++p) {
    if (part_weights_[p] <= 0.0) {
      throw Error(ErrorCode::EmptyPart, "part " + std::to_string(p) + " has no atoms");
    }
  }
}

// ---------------------------------------------------------------------------
// SimpleGraph

SimpleGraph::SimpleGraph(int k, std::vector<std::pair<int, int>> edges) : k_(k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= k || v >= k) {
      throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    }
    if (u == v) throw Error(ErrorCode::InvalidArgument, "loops are not allowed");
    auto key = std::minmax(u, v);
    if (!seen.insert({key.first, key.second}).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate edge");
    }
    edges_.emplace_back(key.first, key.second);
  }
}

SimpleGraph SimpleGraph::edge() { return SimpleGraph(2, {{0, 1}}); }

SimpleGraph SimpleGraph::path(int k) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < k; ++i) e.emplace_back(i, i + 1);
  return SimpleGraph(k, std::move(e));
}

SimpleGraph SimpleGraph::cycle(int k) {
  if (k < 3) throw Error(ErrorCode::InvalidArgument, "cycle needs at least 3 vertices");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < k; ++i) e.emplace_back(i, (i + 1) % k);
  return SimpleGraph(k, std::move(e));
}

SimpleGraph SimpleGraph::complete(int k) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) e.emplace_back(i, j);
  return SimpleGraph(k, std::move(e));
}

SimpleGraph SimpleGraph::disjoint_union(const SimpleGraph& a, const SimpleGraph& b) {
  auto e = a.edges();
  for (auto [u, v] : b.edges()) e.emplace_back(u + a.vertices(), v + a.vertices());
  return SimpleGraph(a.vertices() + b.vertices(), std::move(e));
}

// ---------------------------------------------------------------------------
// Permutations

bool is_permutation(std::span<const int> g) {
  std::vector<char> hit(g.size(), 0);
  for (int x : g) {
    if (x < 0 || x >= static_cast<int>(g.size()) || hit[x]) return false;
    hit[x] = 1;
  }
  return true;
}

Permutation compose(std::span<const int> a, std::span<const int> b) {
  Permutation r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

Permutation inverse(std::span<const int> g) {
  Permutation r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[g[i]] = static_cast<int>(i);
  return r;
}

namespace {

void check_weight_preserving(const DiscreteSpace& space, std::span<const int> g) {
  if (static_cast<int>(g.size()) != space.size() || !is_permutation(g)) {
    throw Error(ErrorCode::InvalidArgument, "not a permutation of the atoms");
  }
  for (int i = 0; i < space.size(); ++i) {
    // Weights are compared exactly: equal-weight atoms come from identical arithmetic.
    if (space.weight(g[i]) != space.weight(i)) {
      throw Error(ErrorCode::WeightMismatch,
                  "permutation moves atom " + std::to_string(i) + " to a different weight");
    }
  }
}

}  // namespace

PermutationAction::PermutationAction(DiscreteSpace space, std::vector<Permutation> generators)
    : space_(std::move(space)), generators_(std::move(generators)) {
  for (const auto& g : generators_) check_weight_preserving(space_, g);
}

// ---------------------------------------------------------------------------
// Operations

Kernel kernel_from_matrix(const Matrix& values, std::optional<Vector> weights) {
  if (values.rows() != values.cols()) {
    throw Error(ErrorCode::NonSquare, "matrix is " + std::to_string(values.rows()) + "x" +
                                          std::to_string(values.cols()));
  }
  const int n = static_cast<int>(values.rows());
  if (weights && weights->size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "weight vector length differs from matrix size");
  }
  DiscreteSpace space = weights ? DiscreteSpace(*weights) : DiscreteSpace::uniform(n);
  return Kernel(std::move(space), values);
}

Kernel expand_step(const StepFunction& sf) {
  const int n = sf.space().size();
  Matrix values(n, n);
  const auto& lab = sf.part_of();
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) values(a, b) = sf.block()(lab[a], lab[b]);
  return Kernel(sf.space(), values);
}

StepFunction quotient_average(const Kernel& kernel, std::span<const int> part_of) {
  const int n = kernel.size();
  if (static_cast<int>(part_of.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "one part label per atom required");
  }
  int s = 0;
  for (int p : part_of) {
    if (p < 0) throw Error(ErrorCode::InvalidArgument, "negative part label");
    s = std::max(s, p + 1);
  }
  const Vector& w = kernel.space().weights();
  Vector part_w = Vector::Zero(s);
  for (int a = 0; a < n; ++a) part_w[part_of[a]] += w[a];
  for (int p = 0; p < s; ++p) {
    if (part_w[p] <= 0.0) {
      throw Error(ErrorCode::EmptyPart, "part " + std::to_string(p) + " has no atoms");
    }
  }
  // Build the membership matrix once: block = P^T diag(w) K diag(w) P / (W_p W_q).
  Matrix membership = Matrix::Zero(n, s);
  for (int a = 0; a < n; ++a) membership(a, part_of[a]) = w[a];
  Matrix block = membership.transpose() * kernel.values() * membership;
  for (int q = 0; q < s; ++q)
    for (int p = 0; p < s; ++p) block(p, q) /= part_w[p] * part_w[q];
  // Blocks that are constant over atoms are stored exactly, so that
  // quotient_average(expand_step(sf)) reproduces sf.block() bit for bit.
  for (int q = 0; q < s; ++q) {
    for (int p = 0; p < s; ++p) {
      double first = 0.0;
      bool have = false, constant = true;
      for (int b = 0; b < n && constant; ++b) {
        if (part_of[b] != q) continue;
        for (int a = 0; a < n; ++a) {
          if (part_of[a] != p) continue;
          if (!have) {
            first = kernel(a, b);
            have = true;
          } else if (kernel(a, b) != first) {
            constant = false;
            break;
          }
        }
      }
      if (constant) block(p, q) = first;
    }
  }
  std::vector<int> labels(part_of.begin(), part_of.end());
  return StepFunction(kernel.space(), std::move(labels), block);
}

Kernel apply_permutation(const Kernel& kernel, std::span<const int> g) {
  check_weight_preserving(kernel.space(), g);
  const int n = kernel.size();
  Matrix values(n, n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) values(x, y) = kernel(g[x], g[y]);
  return Kernel(kernel.space(), values);
}

double weighted_norm(const Kernel& kernel, Norm which) {
  const Vector& w = kernel.space().weights();
  const Matrix& k = kernel.values();
  switch (which) {
    case Norm::L1:
      return w.dot(k.cwiseAbs() * w);
    case Norm::L2:
      return std::sqrt(w.dot(k.cwiseAbs2() * w));
    case Norm::Linf:
      return k.cwiseAbs().maxCoeff();
  }
  return 0.0;
}

double weighted_mean(const Kernel& kernel) {
  const Vector& w = kernel.space().weights();
  return w.dot(kernel.values() * w);
}

}  // namespace graphon
