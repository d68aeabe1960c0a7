#pragma once

#include <vector>

#include "graphon/core.hpp"

namespace graphon {

/// Consecutive eigen-indices [begin, end) whose eigenvalues agree within the cluster tolerance.
struct EigenCluster {
  int begin = 0;
  int end = 0;
  double value = 0.0;  // mean eigenvalue of the cluster
  int dimension() const { return end - begin; }
};

/// Eigenvalues sorted by decreasing |lambda| with weight-orthonormal eigenvectors
/// (columns of `eigenvectors`), grouped into multiplicity clusters.
struct SpectralDecomposition {
  Kernel kernel;
  Vector eigenvalues;
  Matrix eigenvectors;
  std::vector<EigenCluster> clusters;
  double tolerance = 0.0;

  int size() const { return static_cast<int>(eigenvalues.size()); }
  bool is_zero_cluster(const EigenCluster& c) const;
  /// Sum of lambda_i f_i f_i^* over one cluster; basis independent.
  Matrix cluster_projector(const EigenCluster& c) const;
  /// sup |f_i| for every eigenvector.
  Vector eigenvector_sup_norms() const;
  /// Distinct nonzero eigenvalue magnitudes, descending (clusters +a/-a merged).
  std::vector<double> distinct_magnitudes() const;
  /// || [M]_t ||_2^2 = sum of lambda_i^2 over clusters kept by tail_truncate at t.
  double energy_above(double t) const;
};

struct SpectrumDistribution {
  std::vector<double> support;
  std::vector<double> probabilities;
  double moment(int k) const;
};

/// Relative cluster tolerance: clusters join eigenvalues within kClusterRelTol * max(|lambda_1|, 1).
inline constexpr double kClusterRelTol = 1e-8;

SpectralDecomposition decompose(const Kernel& kernel);

/// [M]_lambda: sum over clusters with |value| > lambda. A threshold within the
/// cluster tolerance of an eigenvalue magnitude throws ThresholdSplitsCluster.
Kernel tail_truncate(const SpectralDecomposition& decomp, double lambda);

/// True when tail_truncate accepts `lambda`.
bool is_legal_threshold(const SpectralDecomposition& decomp, double lambda);

/// Largest cluster-safe threshold <= t: t itself above the spectrum, otherwise
/// the nearest gap midpoint below t (gaps include the one down to 0).
double snap_to_gap(const SpectralDecomposition& decomp, double t);

/// Midpoints of the gaps between consecutive distinct magnitudes, descending,
/// ending with half the smallest nonzero magnitude.
std::vector<double> gap_midpoints(const SpectralDecomposition& decomp);

double spectral_radius(const SpectralDecomposition& decomp);
/// Eigenvalue-only route for large kernels.
double spectral_radius(const Kernel& kernel);

SpectrumDistribution spectrum_distribution(const SpectralDecomposition& decomp);

}  // namespace graphon
