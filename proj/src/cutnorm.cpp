#include "graphon/cutnorm.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "graphon/parallel.hpp"
#include "graphon/rng.hpp"
#include "graphon/spectral.hpp"

namespace graphon {

const char* to_string(CutMethod m) {
  switch (m) {
    case CutMethod::Exact: return "exact";
    case CutMethod::HeuristicSpectral: return "heuristic+spectral";
    case CutMethod::HeuristicL1: return "heuristic+L1";
  }
  return "unknown";
}

double bilinear_form(const Vector& f, const Kernel& kernel, const Vector& g) {
  if (f.size() != kernel.size() || g.size() != kernel.size()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length differs from kernel size");
  }
  const Vector& w = kernel.space().weights();
  return f.cwiseProduct(w).dot(kernel.values() * g.cwiseProduct(w));
}

namespace {

inline double sign_of(double x) { return x >= 0.0 ? 1.0 : -1.0; }

struct Candidate {
  double value = -1.0;
  Vector f, g;
};

// Finalizes a witness pair: the reported lower bound is the form recomputed
// directly on the witnesses, flipped to be nonnegative.
CutNormEstimate finish(const Kernel& kernel, Candidate best, double upper, CutMethod method) {
  double v = bilinear_form(best.f, kernel, best.g);
  if (v < 0.0) {
    best.f = -best.f;
    v = -v;
  }
  CutNormEstimate out;
  out.lower = v;
  out.upper = method == CutMethod::Exact ? v : std::max(upper, v);
  out.witness_f = std::move(best.f);
  out.witness_g = std::move(best.g);
  out.method = method;
  return out;
}

}  // namespace

CutNormEstimate cutnorm_exact(const Kernel& kernel, int max_n, int threads) {
  const int n = kernel.size();
  if (n > max_n) {
    throw Error(ErrorCode::TooLarge, "n = " + std::to_string(n) + " exceeds exact limit " +
                                         std::to_string(max_n));
  }
  const Vector& w = kernel.space().weights();
  // Column y of `weighted` is w_y K(., y); row sums against g give (Kg)(x).
  const Matrix weighted = kernel.values() * w.asDiagonal();

  // g(0) = +1 fixed (g -> -g symmetry); the remaining n-1 signs follow a Gray code.
  const int free_bits = n - 1;
  const std::int64_t total = std::int64_t{1} << free_bits;
  const int chunk_bits = std::min(free_bits, 8);
  const std::int64_t chunks = total >> chunk_bits;
  const std::int64_t chunk_len = std::int64_t{1} << chunk_bits;

  std::vector<Candidate> per_chunk(chunks);
  parallel_for(chunks, threads, [&](std::int64_t c) {
    Candidate best;
    Vector g(n);
    Vector r(n);
    for (std::int64_t step = 0; step < chunk_len; ++step) {
      const std::int64_t idx = c * chunk_len + step;
      const std::int64_t gray = idx ^ (idx >> 1);
      if (step == 0) {
        g[0] = 1.0;
        for (int b = 0; b < free_bits; ++b) g[b + 1] = (gray >> b) & 1 ? -1.0 : 1.0;
        r = weighted * g;
      } else {
        // Exactly one bit differs from the previous Gray code word.
        const int b = __builtin_ctzll(static_cast<unsigned long long>(idx));
        const int y = b + 1;
        g[y] = -g[y];
        r += 2.0 * g[y] * weighted.col(y);
      }
      const double value = w.dot(r.cwiseAbs());
      if (value > best.value) {
        best.value = value;
        best.g = g;
        best.f = r.unaryExpr([](double x) { return sign_of(x); });
      }
    }
    per_chunk[c] = std::move(best);
  });

  Candidate best;
  for (auto& c : per_chunk) {
    if (c.value > best.value) best = std::move(c);
  }
  // Recompute the winner's f from scratch to shed Gray-code drift.
  best.f = (weighted * best.g).unaryExpr([](double x) { return sign_of(x); });
  return finish(kernel, std::move(best), 0.0, CutMethod::Exact);
}

CutNormEstimate cutnorm_heuristic(const Kernel& kernel, int restarts, std::uint64_t seed,
                                  int threads) {
  if (restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be >= 1");
  const int n = kernel.size();
  const Vector& w = kernel.space().weights();
  const Matrix weighted = kernel.values() * w.asDiagonal();

  std::vector<Candidate> per_restart(restarts);
  parallel_for(restarts, threads, [&](std::int64_t r) {
    auto rng = stream_rng(seed, static_cast<std::uint64_t>(r));
    Vector g(n), f(n);
    for (int i = 0; i < n; ++i) g[i] = (rng() >> 63) ? -1.0 : 1.0;
    auto sgn = [](double x) { return sign_of(x); };
    double value = -1.0;
    // Each half-step maximizes the form over one side, so the value never
    // decreases; the sign-vector domain is finite. Iteration cap only guards
    // against ties cycling at equal value.
    for (int iter = 0; iter < 10 * n + 100; ++iter) {
      Vector f_next = (weighted * g).unaryExpr(sgn);
      Vector g_next = (weighted.transpose() * f_next.cwiseProduct(w)).unaryExpr(sgn);
      const double next = f_next.cwiseProduct(w).dot(weighted * g_next);
      const bool stalled = f_next == f && g_next == g;
      f = std::move(f_next);
      g = std::move(g_next);
      if (stalled || next <= value) {
        value = std::max(value, next);
        break;
      }
      value = next;
    }
    per_restart[r] = Candidate{value, f, g};
  });

  Candidate best;
  for (auto& c : per_restart) {
    if (c.value > best.value) best = std::move(c);
  }
  const double rad = spectral_radius(kernel);
  const double l1 = weighted_norm(kernel, Norm::L1);
  const CutMethod method = rad <= l1 ? CutMethod::HeuristicSpectral : CutMethod::HeuristicL1;
  return finish(kernel, std::move(best), std::min(rad, l1), method);
}

CutNormEstimate cutnorm_bracket(const Kernel& kernel, const CutNormConfig& config) {
  if (kernel.size() <= config.exact_limit) {
    return cutnorm_exact(kernel, config.exact_limit, config.threads);
  }
  return cutnorm_heuristic(kernel, config.restarts, config.seed, config.threads);
}

}  // namespace graphon
