#include "graphon/homdensity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "graphon/parallel.hpp"
#include "graphon/rng.hpp"

namespace graphon {

const char* to_string(DensityMethod m) {
  switch (m) {
    case DensityMethod::ExactStep: return "exact_step";
    case DensityMethod::MonteCarlo: return "monte_carlo";
    case DensityMethod::SpectralCycle: return "spectral_cycle";
  }
  return "unknown";
}

DensityEstimate hom_density_step(const SimpleGraph& graph, const StepFunction& sf,
                                 const DensityConfig& config) {
  const int k = graph.vertices();
  if (k > config.max_vertices) {
    throw Error(ErrorCode::TooManyVertices, std::to_string(k) + " vertices exceed the cap of " +
                                                std::to_string(config.max_vertices));
  }
  const int s = sf.parts();
  const Matrix& block = sf.block();
  const Vector& pw = sf.part_weights();

  // Edges grouped by their later endpoint, so each factor is applied as soon as
  // both ends are assigned.
  std::vector<std::vector<int>> back_edges(k);
  for (auto [u, v] : graph.edges()) back_edges[std::max(u, v)].push_back(std::min(u, v));

  std::vector<int> assign(k, 0);
  auto recurse = [&](auto&& self, int depth, double weight) -> double {
    if (depth == k) return weight;
    double sum = 0.0;
    for (int p = 0; p < s; ++p) {
      double w = weight * pw[p];
      for (int u : back_edges[depth]) w *= block(p, assign[u]);
      if (w == 0.0) continue;
      assign[depth] = p;
      sum += self(self, depth + 1, w);
    }
    return sum;
  };
  DensityEstimate out;
  out.value = recurse(recurse, 0, 1.0);
  out.method = DensityMethod::ExactStep;
  return out;
}

namespace {

constexpr std::int64_t kChunk = 4096;

struct Moments {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const std::int64_t total = count + o.count;
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / static_cast<double>(total);
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) /
                     static_cast<double>(total);
    count = total;
  }
};

}  // namespace

DensityEstimate hom_density_mc(const SimpleGraph& graph, const Kernel& kernel,
                               std::int64_t samples, std::uint64_t seed,
                               const DensityConfig& config) {
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
  const int k = graph.vertices();
  const int n = kernel.size();
  std::vector<double> cumulative(n);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) cumulative[i] = (acc += kernel.space().weight(i));

  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<Moments> per_chunk(chunks);
  parallel_for(chunks, config.threads, [&](std::int64_t c) {
    auto rng = stream_rng(seed, static_cast<std::uint64_t>(c));
    const std::int64_t count = std::min(kChunk, samples - c * kChunk);
    std::vector<int> x(k);
    Moments m;
    for (std::int64_t s = 0; s < count; ++s) {
      for (int v = 0; v < k; ++v) {
        const double u = uniform01(rng) * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        x[v] = std::min(static_cast<int>(it - cumulative.begin()), n - 1);
      }
      double prod = 1.0;
      for (auto [a, b] : graph.edges()) prod *= kernel(x[a], x[b]);
      m.add(prod);
    }
    per_chunk[c] = m;
  });
  Moments total;
  for (const auto& m : per_chunk) total.merge(m);

  DensityEstimate out;
  out.value = total.mean;
  out.samples = samples;
  out.method = DensityMethod::MonteCarlo;
  if (samples > 1) {
    const double var = std::max(total.m2, 0.0) / static_cast<double>(samples - 1);
    out.std_error = std::sqrt(var / static_cast<double>(samples));
  }
  return out;
}

DensityEstimate cycle_density_spectral(const SpectralDecomposition& decomp, int k) {
  if (k < 3) throw Error(ErrorCode::InvalidArgument, "cycle length must be >= 3");
  DensityEstimate out;
  out.value = decomp.eigenvalues.array().pow(static_cast<double>(k)).sum();
  out.method = DensityMethod::SpectralCycle;
  return out;
}

MomentIdentityReport moment_identity_check(const SpectralDecomposition& decomp, int k_max) {
  const SpectrumDistribution dist = spectrum_distribution(decomp);
  const double c4 = cycle_density_spectral(decomp, 4).value;
  MomentIdentityReport out;
  for (int k = 1; k <= k_max; ++k) {
    const double moment = dist.moment(k);
    const double ratio = cycle_density_spectral(decomp, 4 + k).value / c4;
    out.spectrum_moments.push_back(moment);
    out.cycle_ratios.push_back(ratio);
    out.max_discrepancy = std::max(out.max_discrepancy, std::abs(moment - ratio));
  }
  return out;
}

}  // namespace graphon
