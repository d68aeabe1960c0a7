#include "graphon/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace graphon {

namespace {

double probe(const ControlFunction& F, double t, double epsilon, double previous) {
  const double v = F(t, epsilon);
  if (!std::isfinite(v) || v <= 0.0) {
    throw Error(ErrorCode::NonDecreasingF,
                "F(" + std::to_string(t) + ", eps) = " + std::to_string(v) + " is not positive");
  }
  // Probes run at shrinking t; F must not grow along them.
  if (v > previous * (1.0 + 1e-12)) {
    throw Error(ErrorCode::NonDecreasingF, "F grew as lambda shrank at t = " + std::to_string(t));
  }
  return v;
}

}  // namespace

ThresholdChoice choose_threshold(const SpectralDecomposition& decomp, const ControlFunction& F,
                                 double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  const double total = decomp.eigenvalues.squaredNorm();
  if (total > 1.0 + 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "requires ||K||_2 <= 1");
  }
  const int max_steps = static_cast<int>(std::ceil(1.0 / (epsilon * epsilon))) + 1;

  ThresholdChoice out;
  double t = snap_to_gap(decomp, 1.0);
  double previous_F = HUGE_VAL;
  out.chain.push_back(t);
  bool found = false;
  for (int j = 0; j < max_steps; ++j) {
    // The geometric tail underflows long before max_steps for small epsilon.
    if (found && t < 1e-290) break;
    previous_F = probe(F, t, epsilon, previous_F);
    const double next = snap_to_gap(decomp, std::min(previous_F, 0.5 * t));
    out.chain.push_back(next);
    if (!found) {
      const double increment = decomp.energy_above(next) - decomp.energy_above(t);
      if (increment <= epsilon * epsilon) {
        out.lambda = t;
        out.lambda_next = next;
        out.energy_increment = std::max(increment, 0.0);
        found = true;
      }
    }
    t = next;
  }
  if (!found) {
    // Unreachable when sum lambda_i^2 <= 1: max_steps increments above eps^2 would exceed it.
    throw Error(ErrorCode::SolverFailure, "energy increment search did not terminate");
  }
  out.delta_floor = out.chain.back();
  return out;
}

RegularityDecomposition regularity_decompose(const Kernel& kernel, const ControlFunction& F,
                                             double epsilon, const RegularityConfig& config) {
  return regularity_decompose(decompose(kernel), F, epsilon, config);
}

RegularityDecomposition regularity_decompose(const SpectralDecomposition& decomp,
                                             const ControlFunction& F, double epsilon,
                                             const RegularityConfig& config) {
  const Kernel& M = decomp.kernel;
  if (weighted_norm(M, Norm::Linf) > 1.0 + 1e-12) {
    throw Error(ErrorCode::EntriesOutOfRange, "requires ||M||_inf <= 1");
  }
  const ThresholdChoice choice = choose_threshold(decomp, F, epsilon);
  const Kernel S = tail_truncate(decomp, choice.lambda);
  Kernel SE = tail_truncate(decomp, choice.lambda_next);

  RegularityCertificates cert;
  if (weighted_norm(SE, Norm::Linf) > 1.0) {
    cert.clamped = true;
    SE = Kernel(SE.space(), SE.values().cwiseMax(-1.0).cwiseMin(1.0));
  }
  Kernel E = SE - S;
  Kernel R = M - SE;

  cert.E_l2 = weighted_norm(E, Norm::L2);
  cert.SE_linf = weighted_norm(SE, Norm::Linf);
  cert.epsilon_violated = cert.E_l2 > epsilon;
  cert.R_cut = cutnorm_bracket(R, config.cut);

  return RegularityDecomposition{S,
                                 E,
                                 R,
                                 choice.lambda,
                                 choice.lambda_next,
                                 choice.delta_floor,
                                 epsilon,
                                 F(choice.lambda, epsilon),
                                 std::move(cert)};
}

ClusteringResult cluster_eigenvectors(const SpectralDecomposition& decomp, double lambda,
                                      double epsilon, const ClusterConfig& config) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "structure threshold must be > 0");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  const Kernel G = tail_truncate(decomp, lambda);
  const int n = decomp.size();

  std::vector<int> kept;
  for (const auto& c : decomp.clusters) {
    if (std::abs(c.value) <= lambda) continue;
    for (int i = c.begin; i < c.end; ++i) kept.push_back(i);
  }
  const int k = static_cast<int>(kept.size());
  double m = 0.0;
  for (int i : kept) {
    m = std::max({m, std::abs(decomp.eigenvalues[i]),
                  decomp.eigenvectors.col(i).cwiseAbs().maxCoeff()});
  }

  ClusteringResult out{StepFunction(G.space(), std::vector<int>(n, 0), Matrix::Zero(1, 1))};
  out.k = k;
  out.m = m;
  if (k == 0) return out;

  out.epsilon1 = epsilon / (10.0 * k * m * m);
  out.step_count_bound = std::pow(20.0 * k * m * m * m / epsilon, k);
  if (out.step_count_bound > config.grid_cap) {
    throw Error(ErrorCode::GridOverflow,
                "nominal step bound " + std::to_string(out.step_count_bound) +
                    " exceeds cap; raise epsilon");
  }

  // Cells of width epsilon1 anchored at -m; the last cell absorbs the remainder
  // of [-m, m], so each coordinate takes at most floor(2m / epsilon1) values.
  const long cells = std::max(1L, static_cast<long>(std::floor(2.0 * m / out.epsilon1)));
  std::map<std::vector<long>, int> label_of;
  std::vector<int> part_of(n);
  std::vector<long> key(k);
  for (int v = 0; v < n; ++v) {
    for (int j = 0; j < k; ++j) {
      const double f = decomp.eigenvectors(v, kept[j]);
      key[j] = std::clamp(static_cast<long>(std::floor((f + m) / out.epsilon1)), 0L, cells - 1);
    }
    auto [it, inserted] = label_of.emplace(key, static_cast<int>(label_of.size()));
    part_of[v] = it->second;
  }
  out.step = quotient_average(G, part_of);
  out.linf_error = (expand_step(out.step).values() - G.values()).cwiseAbs().maxCoeff();
  return out;
}

SymmetryDecomposition symmetry_decompose(const Kernel& kernel, const ControlFunction& F,
                                         double epsilon, const SymmetryConfig& config) {
  if (weighted_norm(kernel, Norm::Linf) > 1.0) {
    throw Error(ErrorCode::EntriesOutOfRange, "entries must lie in [-1, 1]");
  }
  const SpectralDecomposition decomp = decompose(kernel);
  SymmetryDecomposition out{
      regularity_decompose(decomp, F, epsilon, config.regularity),
      ClusteringResult{StepFunction(kernel.space(), std::vector<int>(kernel.size(), 0),
                                    Matrix::Zero(1, 1))},
      automorphisms(kernel, config.automorphism),
      {},
  };
  out.clustering = cluster_eigenvectors(decomp, out.regularity.lambda, epsilon, config.cluster);
  const Kernel T = expand_step(out.clustering.step);
  const Kernel& S = out.regularity.S;
  for (const auto& g : out.group.action.generators()) {
    GeneratorInvariance inv{g,
                            (apply_permutation(S, g).values() - S.values()).cwiseAbs().maxCoeff(),
                            (apply_permutation(T, g).values() - T.values()).cwiseAbs().maxCoeff()};
    out.max_S_error = std::max(out.max_S_error, inv.S_error);
    out.max_T_error = std::max(out.max_T_error, inv.T_error);
    out.invariance.push_back(std::move(inv));
  }
  return out;
}

}  // namespace graphon
