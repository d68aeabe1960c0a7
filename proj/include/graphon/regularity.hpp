#pragma once

#include <functional>
#include <vector>

#include "graphon/automorphism.hpp"
#include "graphon/cutnorm.hpp"
#include "graphon/spectral.hpp"

namespace graphon {

/// Control function F(lambda, epsilon) bounding the cut norm of the remainder.
using ControlFunction = std::function<double(double, double)>;

struct ThresholdChoice {
  double lambda = 0.0;
  double lambda_next = 0.0;
  double energy_increment = 0.0;
  /// Smallest threshold the search could have returned for this kernel.
  double delta_floor = 0.0;
  /// Probed thresholds t_0 > t_1 > ... (after gap snapping).
  std::vector<double> chain;
};

/// Energy-increment search: t_0 = 1, t_{j+1} = min(F(t_j, eps), t_j / 2), each
/// snapped to a spectral gap; returns the first pair whose energy increment is
/// at most eps^2. Requires ||K||_2 <= 1.
ThresholdChoice choose_threshold(const SpectralDecomposition& decomp, const ControlFunction& F,
                                 double epsilon);

struct RegularityCertificates {
  double E_l2 = 0.0;
  CutNormEstimate R_cut;
  double SE_linf = 0.0;
  bool clamped = false;
  /// Set when ||E||_2 > epsilon after clamping.
  bool epsilon_violated = false;
};

/// M = S + E + R with S = [M]_lambda, E the band between lambda and lambda_next.
struct RegularityDecomposition {
  Kernel S;
  Kernel E;
  Kernel R;
  double lambda = 0.0;
  double lambda_next = 0.0;
  double delta_floor = 0.0;
  double epsilon = 0.0;
  double F_bound = 0.0;  // F(lambda, epsilon)
  RegularityCertificates certificates;
};

struct RegularityConfig {
  CutNormConfig cut;
};

RegularityDecomposition regularity_decompose(const Kernel& kernel, const ControlFunction& F,
                                             double epsilon, const RegularityConfig& config = {});

/// Same, reusing an existing decomposition of the kernel.
RegularityDecomposition regularity_decompose(const SpectralDecomposition& decomp,
                                             const ControlFunction& F, double epsilon,
                                             const RegularityConfig& config = {});

struct ClusteringResult {
  StepFunction step;
  double epsilon1 = 0.0;
  /// (20 k m^3 / epsilon)^k
  double step_count_bound = 1.0;
  int k = 0;
  double m = 0.0;
  /// Achieved || expand(step) - G ||_inf.
  double linf_error = 0.0;
};

struct ClusterConfig {
  /// Nominal step-count bound above which GridOverflow is raised.
  double grid_cap = 1e6;
};

/// Level-set clustering of the eigenvectors kept at `lambda` into a step
/// function T with ||T - G||_inf <= epsilon, G = [M]_lambda.
ClusteringResult cluster_eigenvectors(const SpectralDecomposition& decomp, double lambda,
                                      double epsilon, const ClusterConfig& config = {});

struct GeneratorInvariance {
  Permutation generator;
  double S_error = 0.0;  // ||g S g^-1 - S||_inf
  double T_error = 0.0;  // ||g T g^-1 - T||_inf
};

struct SymmetryDecomposition {
  RegularityDecomposition regularity;
  ClusteringResult clustering;
  AutomorphismGroup group;
  std::vector<GeneratorInvariance> invariance;
  double max_S_error = 0.0;
  double max_T_error = 0.0;
};

struct SymmetryConfig {
  RegularityConfig regularity;
  ClusterConfig cluster;
  AutomorphismConfig automorphism;
};

SymmetryDecomposition symmetry_decompose(const Kernel& kernel, const ControlFunction& F,
                                         double epsilon, const SymmetryConfig& config = {});

}  // namespace graphon
