#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphon/core.hpp"
#include "graphon/cutnorm.hpp"

namespace graphon {

/// Real profile f: [-1, 1] -> R for distance-dependent kernels.
class ProfileFunction {
 public:
  enum class Kind { Table, Threshold, Linear, CosineSeries, Constant };

  /// Values on the uniform grid -1 = t_0 < ... < t_{g-1} = 1, nearest-grid evaluation.
  static ProfileFunction table(std::vector<double> values);
  /// 1 if t > c else 0.
  static ProfileFunction threshold(double c);
  /// f(t) = t.
  static ProfileFunction linear();
  /// f(t) = sum_j coeffs[j] * cos(j * arccos t), i.e. a cosine series in the angle.
  static ProfileFunction cosine_series(std::vector<double> coeffs);
  static ProfileFunction constant(double p);

  /// Parses "threshold:c", "linear", "cosine:a0,a1,...", "constant:p", "table:v0,v1,...".
  static ProfileFunction parse(const std::string& spec);

  double operator()(double t) const;
  Kind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::string describe() const;

 private:
  ProfileFunction(Kind kind, std::vector<double> params, double lo, double hi)
      : kind_(kind), params_(std::move(params)), lo_(lo), hi_(hi) {}

  Kind kind_;
  std::vector<double> params_;
  double lo_;
  double hi_;
};

/// K(x, y) = f(y - x mod n) on Z_n with uniform weights; f must be even.
Kernel cayley_kernel(int n, const std::vector<double>& f);

/// Half-plane graphon on n grid angles (i + 1/2)/n turns: K = 1 iff the points'
/// scalar product is positive. n must be a multiple of 4.
Kernel circle_halfplane_kernel(int n);

/// i -> k*i mod n; requires gcd(k, n) = 1.
Permutation dilation_perm(int n, int k);

/// N uniform points on the sphere S_dim in R^{dim+1}, one per row.
Matrix sphere_points(int dim, int N, std::uint64_t seed);

/// K(i, j) = f(x_i . x_j) for sampled sphere points, uniform weights.
Kernel sphere_kernel(int dim, const ProfileFunction& f, int N, std::uint64_t seed);

struct WRandomSample {
  Kernel graph;
  std::vector<int> atoms;  // source atom of each vertex
};

/// W-random graph: vertices drawn by weight, edges independent with probability K.
WRandomSample w_random_graph(const Kernel& kernel, int N, std::uint64_t seed);

struct InvariantSpectrumReport {
  std::vector<double> cluster_values;
  std::vector<int> cluster_dimensions;
  int d = 0;  // smallest nonzero cluster dimension; 0 when the spectrum is all zero
  double l2 = 0.0;
  double radius = 0.0;
  std::optional<double> bound;  // l2 / sqrt(d)
  CutNormEstimate cut;
  bool radius_within_bound = true;
  bool cut_within_bound = true;
};

struct InvariantDimensionReport {
  double mean = 0.0;                // p = weighted mean of K
  InvariantSpectrumReport kernel;   // K itself
  InvariantSpectrumReport centered; // K - p
};

InvariantDimensionReport invariant_dimension_report(const Kernel& kernel,
                                                    const PermutationAction& action,
                                                    const CutNormConfig& cut = {});

}  // namespace graphon
