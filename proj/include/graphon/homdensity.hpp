#pragma once

#include <cstdint>

#include "graphon/core.hpp"
#include "graphon/spectral.hpp"

namespace graphon {

enum class DensityMethod { ExactStep, MonteCarlo, SpectralCycle };

const char* to_string(DensityMethod m);

struct DensityEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  DensityMethod method = DensityMethod::ExactStep;
};

struct DensityConfig {
  int max_vertices = 10;
  int threads = 1;
};

/// t(G, W) summed over all part assignments of G's vertices.
DensityEstimate hom_density_step(const SimpleGraph& graph, const StepFunction& sf,
                                 const DensityConfig& config = {});

/// Sample mean of prod_{ij in E} K(x_i, x_j) over weight-distributed atom tuples.
/// Samples are drawn in fixed-size chunks with per-chunk streams, so the
/// estimate is identical for every thread count.
DensityEstimate hom_density_mc(const SimpleGraph& graph, const Kernel& kernel,
                               std::int64_t samples, std::uint64_t seed,
                               const DensityConfig& config = {});

/// t(C_k, W) = sum_i lambda_i^k.
DensityEstimate cycle_density_spectral(const SpectralDecomposition& decomp, int k);

struct MomentIdentityReport {
  std::vector<double> spectrum_moments;  // E[X^k], k = 1..k_max
  std::vector<double> cycle_ratios;      // t(C_{4+k}) / t(C_4)
  double max_discrepancy = 0.0;
};

MomentIdentityReport moment_identity_check(const SpectralDecomposition& decomp, int k_max);

}  // namespace graphon
