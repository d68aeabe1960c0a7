#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "graphon/core.hpp"

namespace graphon::testing {

inline Matrix random_symmetric(int n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) a(i, j) = a(j, i) = u(rng);
  return a;
}

inline Vector random_weights(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.2, 1.0);
  Vector w(n);
  for (int i = 0; i < n; ++i) w[i] = u(rng);
  w /= w.sum();
  // Push the rounding residue into the last atom so the sum is 1 to ~1e-16.
  w[n - 1] = 1.0 - (w.sum() - w[n - 1]);
  return w;
}

inline Kernel random_kernel(int n, std::mt19937_64& rng, bool weighted = false) {
  Matrix a = random_symmetric(n, rng);
  if (weighted) return kernel_from_matrix(a, random_weights(n, rng));
  return kernel_from_matrix(a);
}

/// Independent cut-norm oracle: every pair (f, g) in {-1,+1}^n x {-1,+1}^n, direct double sums.
inline double brute_force_cutnorm(const Kernel& k) {
  const int n = k.size();
  const Vector& w = k.space().weights();
  double best = 0.0;
  std::vector<double> kg(n);
  for (std::uint32_t gm = 0; gm < (1u << n); ++gm) {
    for (int x = 0; x < n; ++x) {
      double s = 0.0;
      for (int y = 0; y < n; ++y) s += w[y] * k(x, y) * ((gm >> y) & 1 ? -1.0 : 1.0);
      kg[x] = s;
    }
    for (std::uint32_t fm = 0; fm < (1u << n); ++fm) {
      double v = 0.0;
      for (int x = 0; x < n; ++x) v += w[x] * ((fm >> x) & 1 ? -1.0 : 1.0) * kg[x];
      best = std::max(best, std::abs(v));
    }
  }
  return best;
}

/// Power iteration on the weighted operator (Kf)(x) = sum_y w_y K(x,y) f(y).
inline double power_iteration_radius(const Kernel& k, int iters = 20000) {
  const int n = k.size();
  const Vector root = k.space().weights().cwiseSqrt();
  const Matrix a = root.asDiagonal() * k.values() * root.asDiagonal();
  // Iterate on A^2 so +-lambda pairs do not stall convergence.
  const Matrix a2 = a * a;
  Vector v = Vector::LinSpaced(n, 1.0, 2.0);
  v.normalize();
  double rayleigh = 0.0;
  for (int i = 0; i < iters; ++i) {
    Vector next = a2 * v;
    const double norm = next.norm();
    if (norm == 0.0) return 0.0;
    next /= norm;
    const double r = next.dot(a2 * next);
    if (std::abs(r - rayleigh) < 1e-18 && i > 100) break;
    rayleigh = r;
    v = next;
  }
  return std::sqrt(std::abs(rayleigh));
}

/// Real DFT coefficients hat f(j) = (1/n) sum_x f(x) cos(2 pi j x / n) for an even f.
inline std::vector<double> dft_eigenvalues(const std::vector<double>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) {
    std::complex<double> s = 0.0;
    for (int x = 0; x < n; ++x) s += f[x] * std::polar(1.0, -2.0 * M_PI * j * x / n);
    out[j] = s.real() / n;
  }
  return out;
}

/// All elements of the group generated by `gens`, by closure.
inline std::size_t group_closure_size(const std::vector<Permutation>& gens, int n) {
  Permutation id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  std::vector<Permutation> elements{id};
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& g : gens) {
      Permutation h = compose(g, elements[i]);
      if (std::find(elements.begin(), elements.end(), h) == elements.end()) elements.push_back(h);
    }
  }
  return elements.size();
}

}  // namespace graphon::testing
