#include "graphon/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "graphon/ensembles.hpp"
#include "graphon/homdensity.hpp"
#include "graphon/io.hpp"
#include "graphon/regularity.hpp"

namespace graphon::experiments {

namespace {

using report::Json;
using report::Relation;
using report::Report;

CutNormConfig cut_config(const ExperimentConfig& c, std::uint64_t seed) {
  CutNormConfig cut;
  cut.exact_limit = c.exact_limit;
  cut.restarts = c.restarts;
  cut.seed = seed;
  cut.threads = c.threads;
  return cut;
}

void require_seeds(const ExperimentConfig& c) {
  if (c.seeds.empty()) {
    throw Error(ErrorCode::InvalidArgument, "experiment '" + c.name + "' needs explicit seeds");
  }
}

Report run_circle(const ExperimentConfig& c) {
  require_seeds(c);
  Report r("experiment");
  r.inputs() = {{"name", c.name},          {"n", c.n},
                {"multipliers", c.multipliers}, {"max_cycle", c.max_cycle},
                {"density_tolerance", c.density_tolerance}, {"separation", c.separation},
                {"seeds", c.seeds},        {"exact_limit", c.exact_limit},
                {"restarts", c.restarts}};
  const Kernel k = circle_halfplane_kernel(c.n);
  const auto dk = decompose(k);
  r.results()["spectrum"] = report::spectrum_json(dk);
  Json runs = Json::array();
  for (int mult : c.multipliers) {
    const Kernel moved = apply_permutation(k, dilation_perm(c.n, mult));
    const auto dm = decompose(moved);
    Json deltas = Json::array();
    double worst = 0.0;
    for (int j = 3; j <= c.max_cycle; ++j) {
      const double delta =
          std::abs(cycle_density_spectral(dm, j).value - cycle_density_spectral(dk, j).value);
      deltas.push_back({{"cycle", j}, {"delta", delta}});
      worst = std::max(worst, delta);
    }
    double best_lower = 0.0;
    Json brackets = Json::array();
    for (std::uint64_t seed : c.seeds) {
      const auto e = cutnorm_bracket(moved - k, cut_config(c, seed));
      brackets.push_back({{"seed", seed}, {"lower", e.lower}, {"upper", e.upper},
                          {"method", to_string(e.method)}});
      best_lower = std::max(best_lower, e.lower);
    }
    runs.push_back({{"multiplier", mult}, {"density_deltas", deltas}, {"cut", brackets}});
    const std::string tag = "k" + std::to_string(mult);
    r.add_check(tag + ".max_cycle_density_delta", worst, c.density_tolerance);
    r.add_check(tag + ".cut_separation_lower", best_lower, c.separation, Relation::AtLeast);
  }
  r.results()["runs"] = std::move(runs);
  return r;
}

Report run_sphere(const ExperimentConfig& c) {
  require_seeds(c);
  Report r("experiment");
  const ProfileFunction f = ProfileFunction::parse(c.profile);
  r.inputs() = {{"name", c.name},   {"dims", c.dims},   {"N", c.N},
                {"profile", f.describe()}, {"slack", c.slack}, {"seeds", c.seeds},
                {"exact_limit", c.exact_limit}, {"restarts", c.restarts}};
  Json runs = Json::array();
  for (int dim : c.dims) {
    const double bound = 1.0 / std::sqrt(dim + 1.0);
    for (std::uint64_t seed : c.seeds) {
      const Kernel w = sphere_kernel(dim, f, c.N, seed);
      const double p = weighted_mean(w);
      const auto e = cutnorm_bracket(w.shifted(-p), cut_config(c, seed));
      runs.push_back({{"dim", dim},         {"seed", seed},        {"p", p},
                      {"lower", e.lower},   {"upper", e.upper},    {"method", to_string(e.method)},
                      {"bound", bound}});
      r.add_check("dim" + std::to_string(dim) + ".seed" + std::to_string(seed) + ".cut_lower",
                  e.lower, bound + c.slack);
    }
  }
  r.results()["runs"] = std::move(runs);
  return r;
}

Vector top_eigenvalues(const SpectralDecomposition& d, int count) {
  const int m = std::min(count, d.size());
  return d.eigenvalues.head(m);
}

Report run_wrandom(const ExperimentConfig& c) {
  require_seeds(c);
  Report r("experiment");
  const Kernel source = c.source ? io::load_kernel(*c.source)
                                 : Kernel::constant(DiscreteSpace::uniform(1), c.p);
  r.inputs() = {{"name", c.name},  {"source", c.source ? *c.source : "constant"},
                {"p", c.p},        {"sizes", c.sizes},
                {"track", c.track}, {"top_tolerance", c.top_tolerance},
                {"seeds", c.seeds}};
  const auto ds = decompose(source);
  const Vector reference = top_eigenvalues(ds, c.track);
  Json ns = Json::array(), eig = Json::array(), runs = Json::array();
  for (int N : c.sizes) {
    // Trajectory follows the first seed; every seed is listed under runs.
    for (std::size_t s = 0; s < c.seeds.size(); ++s) {
      const auto sample = w_random_graph(source, N, c.seeds[s]);
      const Vector top = top_eigenvalues(decompose(sample.graph), c.track);
      runs.push_back({{"N", N}, {"seed", c.seeds[s]}, {"top", report::to_json(top)}});
      if (s == 0) {
        ns.push_back(N);
        eig.push_back(report::to_json(top));
      }
      if (N == c.sizes.back()) {
        r.add_check("N" + std::to_string(N) + ".seed" + std::to_string(c.seeds[s]) +
                        ".top_eigenvalue_error",
                    std::abs(top[0] - reference[0]), c.top_tolerance);
      }
    }
  }
  r.results()["trajectory"] = {{"N", ns}, {"eigenvalues", eig},
                               {"reference", report::to_json(reference)}};
  r.results()["runs"] = std::move(runs);
  return r;
}

Report run_regularity(const ExperimentConfig& c) {
  if (!c.source) throw Error(ErrorCode::InvalidArgument, "regularity experiment needs --input");
  Report r("experiment");
  const std::uint64_t seed = c.seeds.empty() ? 0 : c.seeds.front();
  r.inputs() = {{"name", c.name},       {"source", *c.source}, {"epsilon", c.epsilon},
                {"F", c.control.describe()}, {"seed", seed},  {"exact_limit", c.exact_limit},
                {"restarts", c.restarts}};
  const Kernel k = io::load_kernel(*c.source);
  const auto d = decompose(k);
  RegularityConfig rc;
  rc.cut = cut_config(c, seed);
  if (k.size() > c.exact_limit && c.seeds.empty()) require_seeds(c);
  const auto dec = regularity_decompose(d, c.control.function(), c.epsilon, rc);
  r.results()["spectrum"] = report::spectrum_json(d);
  r.results()["decomposition"] = report::to_json(dec);
  const double recon = ((dec.S + dec.E + dec.R) - k).values().cwiseAbs().maxCoeff();
  r.add_check("reconstruction_linf", recon, 1e-9);
  r.add_check("R_cut_upper_vs_F", dec.certificates.R_cut.upper, dec.F_bound);
  r.add_check("E_l2_vs_epsilon", dec.certificates.E_l2, c.epsilon);
  if (!dec.certificates.clamped) r.add_check("SE_linf", dec.certificates.SE_linf, 1.0 + 1e-9);
  if (dec.lambda < spectral_radius(d)) {
    ClusterConfig cc;
    cc.grid_cap = c.grid_cap;
    const auto cl = cluster_eigenvectors(d, dec.lambda, c.epsilon, cc);
    r.results()["partition"] = report::partition_json(cl.step);
    r.results()["clustering"] = {{"k", cl.k}, {"m", cl.m}, {"epsilon1", cl.epsilon1},
                                 {"step_count_bound", cl.step_count_bound},
                                 {"linf_error", cl.linf_error}};
    r.add_check("clustering_linf", cl.linf_error, c.epsilon + 1e-9);
    r.add_check("clustering_parts", cl.step.parts(), cl.step_count_bound);
  }
  return r;
}

}  // namespace

report::Report run_experiment(const ExperimentConfig& config) {
  if (config.name == "circle") return run_circle(config);
  if (config.name == "sphere") return run_sphere(config);
  if (config.name == "wrandom-convergence") return run_wrandom(config);
  if (config.name == "regularity") return run_regularity(config);
  throw Error(ErrorCode::InvalidArgument, "unknown experiment '" + config.name + "'");
}

}  // namespace graphon::experiments
