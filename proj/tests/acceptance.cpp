// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>

#include "graphon/cutnorm.hpp"
#include "graphon/ensembles.hpp"
#include "graphon/experiments.hpp"
#include "graphon/homdensity.hpp"
#include "graphon/regularity.hpp"
#include "graphon/spectral.hpp"
#include "test_support.hpp"

using namespace graphon;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

const ControlFunction quarter = [](double lambda, double eps) { return eps * lambda / 4.0; };

// Shared corpus for criteria 1, 2 and 4: random kernels plus rank-one sign constructions.
std::vector<Kernel> cutnorm_corpus() {
  std::mt19937_64 rng(20240101);
  std::vector<Kernel> out;
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 12;
    if (i % 20 == 19) {
      // c * v v^T with v in {-1,+1}^n: cut norm equals the spectral radius.
      Vector v(n);
      for (int x = 0; x < n; ++x) v[x] = rng() % 2 ? 1.0 : -1.0;
      out.push_back(kernel_from_matrix(0.7 * v * v.transpose()));
    } else {
      out.push_back(testing::random_kernel(n, rng, i % 3 == 0));
    }
  }
  return out;
}

Outcome criterion1() {
  double worst = 0.0;
  for (const Kernel& k : cutnorm_corpus())
    worst = std::max(worst, std::abs(cutnorm_exact(k).lower - testing::brute_force_cutnorm(k)));
  return {worst <= 1e-12, "200 kernels, max |exact - brute force| = " + fmt(worst)};
}

Outcome criterion2() {
  double worst_excess = -HUGE_VAL, tightest = HUGE_VAL;
  for (const Kernel& k : cutnorm_corpus()) {
    const double cut = cutnorm_exact(k).lower;
    const double rad = spectral_radius(decompose(k));
    worst_excess = std::max(worst_excess, cut - rad);
    tightest = std::min(tightest, rad - cut);
  }
  return {worst_excess <= 1e-10 && tightest <= 1e-6,
          "max (cut - radius) = " + fmt(worst_excess) + ", tightest gap = " + fmt(tightest)};
}

Outcome criterion3() {
  std::mt19937_64 rng(303);
  double worst = -HUGE_VAL;
  int thresholds = 0;
  for (int i = 0; i < 100; ++i) {
    const Kernel k = testing::random_kernel(6 + i % 7, rng, i % 2 == 0);
    const auto d = decompose(k);
    const auto mids = gap_midpoints(d);
    // Five midpoints spread across the spectrum.
    for (int j = 0; j < 5 && j < static_cast<int>(mids.size()); ++j) {
      const double alpha = mids[j * (mids.size() - 1) / 4];
      const double cut = cutnorm_exact(k - tail_truncate(d, alpha)).lower;
      worst = std::max(worst, cut - alpha);
      ++thresholds;
    }
  }
  return {worst <= 1e-9 && thresholds == 500,
          std::to_string(thresholds) + " thresholds, max (cut - alpha) = " + fmt(worst)};
}

Outcome criterion4() {
  std::vector<Kernel> kernels = cutnorm_corpus();
  kernels.push_back(circle_halfplane_kernel(64));
  kernels.push_back(cayley_kernel(12, {1, 0.5, -0.5, 0.2, 0, -1, 0.3, -1, 0, 0.2, -0.5, 0.5}));
  kernels.push_back(sphere_kernel(3, ProfileFunction::threshold(0.0), 300, 1));
  kernels.push_back(sphere_kernel(2, ProfileFunction::linear(), 300, 2));
  std::mt19937_64 rng(404);
  for (int i = 0; i < 20; ++i) kernels.push_back(testing::random_kernel(40, rng, i % 2 == 0));
  double worst = -HUGE_VAL;
  long pairs = 0;
  for (const Kernel& k : kernels) {
    if (weighted_norm(k, Norm::Linf) > 1.0) continue;
    const auto d = decompose(k);
    const Vector sup = d.eigenvector_sup_norms();
    for (int i = 0; i < d.size(); ++i) {
      const double lam = std::abs(d.eigenvalues[i]);
      if (lam < 1e-6) continue;
      worst = std::max(worst, sup[i] - 1.0 / lam);
      ++pairs;
    }
  }
  return {worst <= 1e-8, std::to_string(pairs) + " eigenpairs, max (|f|_inf - 1/|lambda|) = " +
                             fmt(worst)};
}

Outcome criterion5() {
  std::mt19937_64 rng(505);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int s = 2 + i % 3;
    const int n = s + static_cast<int>(rng() % 4);
    std::vector<int> labels(n);
    for (int a = 0; a < n; ++a) labels[a] = a % s;
    std::shuffle(labels.begin(), labels.end(), rng);
    const StepFunction sf(DiscreteSpace(testing::random_weights(n, rng)), labels,
                          testing::random_symmetric(s, rng));
    const auto dist = spectrum_distribution(decompose(expand_step(sf)));
    const double c4 = hom_density_step(SimpleGraph::cycle(4), sf).value;
    for (int k = 1; k <= 6; ++k) {
      const double ratio = hom_density_step(SimpleGraph::cycle(4 + k), sf).value / c4;
      worst = std::max(worst, std::abs(dist.moment(k) - ratio));
    }
  }
  return {worst <= 1e-9, "50 step kernels, k <= 6, max discrepancy = " + fmt(worst)};
}

Outcome criterion6() {
  std::mt19937_64 rng(606);
  double recon = 0.0, r_excess = -HUGE_VAL, se_excess = -HUGE_VAL;
  int violations = 0, flag_mismatch = 0, clamped = 0, runs = 0;
  for (int i = 0; i < 50; ++i) {
    Kernel k = testing::random_kernel(32, rng);
    k = k.scaled(1.0 / std::max(1.0, weighted_norm(k, Norm::L2)));
    CutNormConfig cut;
    cut.seed = 6000 + i;
    RegularityConfig rc{cut};
    for (double eps : {0.2, 0.4}) {
      const auto r = regularity_decompose(k, quarter, eps, rc);
      ++runs;
      recon = std::max(recon, max_abs((r.S + r.E + r.R).values() - k.values()));
      r_excess = std::max(r_excess, r.certificates.R_cut.upper - quarter(r.lambda, eps));
      if (r.certificates.E_l2 > eps) ++violations;
      if (r.certificates.epsilon_violated != (r.certificates.E_l2 > eps)) ++flag_mismatch;
      if (r.certificates.clamped) {
        ++clamped;
      } else {
        se_excess = std::max(se_excess, r.certificates.SE_linf - 1.0);
      }
    }
  }
  const bool pass = recon <= 1e-9 && r_excess <= 0.0 && flag_mismatch == 0 && violations == 0 &&
                    se_excess <= 1e-9;
  return {pass, std::to_string(runs) + " runs, recon = " + fmt(recon) + ", max(R_cut - F) = " +
                    fmt(r_excess) + ", eps violations = " + std::to_string(violations) +
                    ", clamped = " + std::to_string(clamped) + ", max(|S+E|_inf - 1) = " +
                    fmt(se_excess)};
}

Outcome criterion7() {
  std::mt19937_64 rng(707);
  std::normal_distribution<double> normal;
  ClusterConfig cc;
  cc.grid_cap = 1e300;
  double err_excess = -HUGE_VAL;
  int count_violations = 0, runs = 0;
  for (int k = 1; k <= 3; ++k) {
    for (int trial = 0; trial < 5; ++trial) {
      // G = sum_i lambda_i f_i f_i^T with weight-orthonormal f_i.
      Matrix f(64, k);
      for (int x = 0; x < 64; ++x)
        for (int i = 0; i < k; ++i) f(x, i) = normal(rng);
      Eigen::HouseholderQR<Matrix> qr(f);
      const Matrix q = Matrix(qr.householderQ()).leftCols(k) * std::sqrt(64.0);
      Vector lam(k);
      for (int i = 0; i < k; ++i) lam[i] = (rng() % 2 ? 1.0 : -1.0) * (0.3 + 0.2 * i);
      Matrix g = q * lam.asDiagonal() * q.transpose();
      g /= std::max(1.0, max_abs(g));
      const auto d = decompose(kernel_from_matrix(g));
      const double lambda = 0.5 * std::abs(d.eigenvalues[k - 1]);
      for (double eps : {0.2, 0.5}) {
        const auto c = cluster_eigenvectors(d, lambda, eps, cc);
        const double err =
            max_abs(expand_step(c.step).values() - tail_truncate(d, lambda).values());
        err_excess = std::max(err_excess, err - eps);
        if (c.step.parts() > c.step_count_bound || c.k != k) ++count_violations;
        ++runs;
      }
    }
  }
  return {err_excess <= 0.0 && count_violations == 0,
          std::to_string(runs) + " runs, max(|T-G|_inf - eps) = " + fmt(err_excess) +
              ", step-count violations = " + std::to_string(count_violations)};
}

Kernel adjacency(int n, const std::vector<std::pair<int, int>>& edges) {
  Matrix a = Matrix::Zero(n, n);
  for (auto [u, v] : edges) a(u, v) = a(v, u) = 1.0;
  return kernel_from_matrix(a);
}

Outcome criterion8() {
  std::vector<std::pair<std::string, Kernel>> cases;
  cases.emplace_back("Z_8", cayley_kernel(8, {0.9, 0.4, -0.3, 0.2, 0.5, 0.2, -0.3, 0.4}));
  cases.emplace_back("Z_12", cayley_kernel(12, {1, 0.6, -0.2, 0.3, 0.1, -0.7, 0.4, -0.7, 0.1, 0.3,
                                                -0.2, 0.6}));
  cases.emplace_back("C_5", adjacency(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}));
  std::vector<std::pair<int, int>> petersen;
  for (int i = 0; i < 5; ++i) {
    petersen.emplace_back(i, (i + 1) % 5);
    petersen.emplace_back(5 + i, 5 + (i + 2) % 5);
    petersen.emplace_back(i, 5 + i);
  }
  cases.emplace_back("Petersen", adjacency(10, petersen));

  SymmetryConfig cfg;
  cfg.cluster.grid_cap = 1e300;
  bool pass = true;
  std::string detail;
  for (auto& [name, k] : cases) {
    k = k.scaled(1.0 / std::max(1.0, weighted_norm(k, Norm::L2)));
    for (double eps : {0.2, 0.4}) {
      const auto s = symmetry_decompose(k, quarter, eps, cfg);
      pass = pass && s.max_S_error <= 1e-8 && s.max_T_error <= eps && !s.invariance.empty();
      if (eps == 0.2) {
        detail += name + " |Aut|=" + fmt(s.group.order()) + " S_err=" + fmt(s.max_S_error) +
                  " T_err=" + fmt(s.max_T_error) + "; ";
      }
    }
  }
  return {pass, detail};
}

Outcome criterion9() {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  bool pass = true;
  double worst_cut = 0.0;
  int min_d = 1 << 20, min_centered_d = 1 << 20, runs = 0;
  for (int p : {7, 11, 13}) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> f(p);
      for (int x = 0; x <= p / 2; ++x) f[x] = f[(p - x) % p] = u(rng);
      Permutation shift(p);
      for (int i = 0; i < p; ++i) shift[i] = (i + 1) % p;

      // Zero-mean profile: the kernel itself has no constant component.
      std::vector<double> centered = f;
      double mean = 0.0;
      for (double v : f) mean += v / p;
      for (double& v : centered) v -= mean;
      Kernel h = cayley_kernel(p, centered);
      h = h.scaled(1.0 / weighted_norm(h, Norm::L2));
      auto r = invariant_dimension_report(h, PermutationAction(h.space(), {shift}));
      min_d = std::min(min_d, r.kernel.d);
      worst_cut = std::max(worst_cut, r.kernel.cut.upper);
      pass = pass && r.kernel.d >= 2 && r.kernel.cut.upper <= 1.0 / std::sqrt(2.0) + 1e-9;

      // General profile: the bound applies to H - p.
      Kernel g = cayley_kernel(p, f);
      g = g.scaled(1.0 / std::max(1.0, weighted_norm(g, Norm::L2)));
      auto rg = invariant_dimension_report(g, PermutationAction(g.space(), {shift}));
      min_centered_d = std::min(min_centered_d, rg.centered.d);
      pass = pass && rg.centered.d >= 2 &&
             rg.centered.cut.upper <= rg.centered.l2 / std::sqrt(2.0) + 1e-9;
      runs += 2;
    }
  }
  return {pass, std::to_string(runs) + " kernels, min d = " + std::to_string(min_d) +
                    ", min d(H-p) = " + std::to_string(min_centered_d) +
                    ", max cut upper = " + fmt(worst_cut) + " (bound " +
                    fmt(1.0 / std::sqrt(2.0)) + ")"};
}

Outcome criterion10() {
  experiments::ExperimentConfig c;
  c.name = "sphere";
  c.dims = {2, 3, 4};
  c.N = 1500;
  c.seeds = {11, 22, 33};
  c.profile = "threshold:0";
  c.slack = 0.05;
  const auto r = experiments::run_experiment(c);
  std::string detail;
  for (const auto& run : r.results()["runs"]) {
    if (run["seed"] == 11) {
      detail += "n=" + run["dim"].dump() + " lower=" + fmt(run["lower"].get<double>()) +
                " bound=" + fmt(run["bound"].get<double>()) + "; ";
    }
  }
  return {r.all_pass() && r.checks().size() == 9, detail + "9 runs"};
}

Outcome criterion11() {
  const int n = 64;
  const Kernel k = circle_halfplane_kernel(n);
  const Kernel moved = apply_permutation(k, dilation_perm(n, 3));
  const auto dk = decompose(k), dm = decompose(moved);
  // Two routes to t(C_j): eigenvalue powers and the trace of the weighted matrix power.
  const Matrix a = k.values() / n, b = moved.values() / n;
  Matrix pa = a * a, pb = b * b;
  double worst = 0.0;
  for (int j = 3; j <= 8; ++j) {
    pa = pa * a;
    pb = pb * b;
    worst = std::max(worst, std::abs(cycle_density_spectral(dm, j).value -
                                     cycle_density_spectral(dk, j).value));
    worst = std::max(worst, std::abs(pa.trace() - pb.trace()));
  }
  CutNormConfig cut;
  cut.seed = 11;
  const auto e = cutnorm_bracket(moved - k, cut);
  return {worst <= 1e-9 && e.lower >= 0.05,
          "max density delta = " + fmt(worst) + ", cut lower of K^psi3 - K = " + fmt(e.lower)};
}

Outcome criterion12() {
  Matrix block(3, 3);
  block << 0.9, 0.2, 0.1, 0.2, 0.8, 0.3, 0.1, 0.3, 0.7;
  const StepFunction sf(DiscreteSpace::uniform(3), {0, 1, 2}, block);
  const Kernel w = expand_step(sf);
  const auto dw = decompose(w);
  const auto mids = gap_midpoints(dw);
  const double lambda = mids.back();  // below the smallest nonzero eigenvalue
  const Kernel wl = tail_truncate(dw, lambda);

  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  std::vector<double> medians;
  bool ranks_ok = true;
  std::string detail = "lambda = " + fmt(lambda) + "; ";
  for (int N : {100, 400, 1600}) {
    std::vector<double> dists;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto sample = w_random_graph(w, N, seed);
      const auto ds = decompose(sample.graph);
      int above = 0;
      for (double l : ds.eigenvalues) above += std::abs(l) > lambda;
      if (N == 1600 && above != 3) ranks_ok = false;
      if (!is_legal_threshold(ds, lambda)) ranks_ok = ranks_ok && N != 1600;
      // Align by source atoms: compare with [W]_lambda pulled back to the sample.
      Matrix pulled(N, N);
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) pulled(i, j) = wl(sample.atoms[i], sample.atoms[j]);
      const Kernel sl = is_legal_threshold(ds, lambda) ? tail_truncate(ds, lambda)
                                                       : tail_truncate(ds, snap_to_gap(ds, lambda));
      dists.push_back(weighted_norm(sl - Kernel(sl.space(), pulled), Norm::L2));
    }
    medians.push_back(median(dists));
    detail += "N=" + std::to_string(N) + " median L2 = " + fmt(medians.back()) + "; ";
  }
  return {ranks_ok && medians.back() < medians.front(),
          detail + (ranks_ok ? "rank 3 at N=1600 in all runs" : "rank mismatch at N=1600")};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GRAPHON_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion13() {
  const fs::path dir = fs::temp_directory_path() / "graphon_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string kernel = (dir / "sphere.txt").string();
  const std::string a = (dir / "a.txt").string(), b = (dir / "b.txt").string();
  bool ok = run_cli("make --ensemble sphere --dim 3 --N 120 --f threshold:0 --seed 3 -o " + kernel) == 0;
  {
    std::ofstream(a) << "parts: 10\n0 1 2 3 4 5 6 7 8 9\n";
    std::ofstream(b) << "parts: 10\n9 8 7 6 5 4 3 2 1 0\n";
    std::mt19937_64 rng(13);
    const Matrix ba = testing::random_symmetric(10, rng, 0.0, 1.0);
    const Matrix bb = testing::random_symmetric(10, rng, 0.0, 1.0);
    std::ofstream fa(a, std::ios::app), fb(b, std::ios::app);
    fa.precision(17);
    fb.precision(17);
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        fa << ba(i, j) << (j + 1 < 10 ? ' ' : '\n');
        fb << bb(i, j) << (j + 1 < 10 ? ' ' : '\n');
      }
    }
  }
  const std::vector<std::string> commands = {
      "cutnorm -i " + kernel + " --restarts 16 --seed 5",
      "density -i " + kernel + " --graph cycle_5 --method mc --samples 50000 --seed 5",
      "decompose -i " + kernel + " --epsilon 0.3 --seed 5 --cluster",
      "distance -i " + a + " --against " + b + " --norm l2 --seed 5",
      "experiment --name sphere --dims 2,3 --N 200 --seeds 1,2",
      "experiment --name wrandom-convergence --sizes 50,100 --seeds 4,5",
  };
  int compared = 0;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::vector<std::string> outputs;
    for (int threads : {1, 4, 1, 4}) {
      const fs::path out = dir / ("out" + std::to_string(c) + "_" +
                                  std::to_string(outputs.size()) + ".json");
      const int rc =
          run_cli(commands[c] + " --threads " + std::to_string(threads) + " -o " + out.string());
      ok = ok && (rc == 0 || rc == 1);
      outputs.push_back(slurp(out));
    }
    for (const auto& o : outputs) ok = ok && !o.empty() && o == outputs.front();
    ++compared;
  }
  fs::remove_all(dir);
  return {ok, std::to_string(compared) + " commands x 4 invocations (threads 1,4,1,4) byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cut-norm exact enumeration equals brute force", criterion1},
      {"cut norm bounded by spectral radius", criterion2},
      {"truncation remainder cut norm at most alpha", criterion3},
      {"eigenfunction sup-norm bound", criterion4},
      {"spectrum moments equal cycle density ratios", criterion5},
      {"regularity decomposition certificates", criterion6},
      {"eigenvector clustering error and step count", criterion7},
      {"symmetry preservation of S and T", criterion8},
      {"quasirandom Cayley kernels", criterion9},
      {"sphere kernel cut-norm bound", criterion10},
      {"circle dilation non-compactness witness", criterion11},
      {"W-random rank and truncation convergence", criterion12},
      {"byte-identical reports across thread counts", criterion13},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (i == 0 && secs > 60.0) {
      o.pass = false;
      o.detail += " (over 60 s)";
    }
    if (i == 9 && secs > 300.0) {
      o.pass = false;
      o.detail += " (over 300 s)";
    }
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %2zu: %s | %s | %.1f s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
