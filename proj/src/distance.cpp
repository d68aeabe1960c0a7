#include "graphon/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphon/homdensity.hpp"
#include "graphon/parallel.hpp"
#include "graphon/rng.hpp"

namespace graphon {

const char* to_string(DistanceNorm n) {
  switch (n) {
    case DistanceNorm::L1: return "l1";
    case DistanceNorm::L2: return "l2";
    case DistanceNorm::Cut: return "cut";
  }
  return "unknown";
}

namespace {

constexpr double kGridTolerance = 1e-9;

std::vector<int> layout(const Vector& part_weights, int m) {
  std::vector<int> labels;
  labels.reserve(m);
  for (int p = 0; p < part_weights.size(); ++p) {
    const long count = std::lround(part_weights[p] * m);
    labels.insert(labels.end(), count, p);
  }
  return labels;
}

bool fits_grid(const Vector& part_weights, int m) {
  long total = 0;
  for (double w : part_weights) {
    const long count = std::lround(w * m);
    if (count < 1 || std::abs(w - static_cast<double>(count) / m) > kGridTolerance) return false;
    total += count;
  }
  return total == m;
}

Kernel expand_labels(const Matrix& block, const std::vector<int>& labels) {
  const int m = static_cast<int>(labels.size());
  Matrix values(m, m);
  for (int b = 0; b < m; ++b)
    for (int a = 0; a < m; ++a) values(a, b) = block(labels[a], labels[b]);
  return Kernel(DiscreteSpace::uniform(m), values);
}

// Permutation psi with k1^psi[a][b] = block1[arrangement[a]][arrangement[b]].
Permutation alignment_of(const std::vector<int>& base_labels, const std::vector<int>& arrangement) {
  const int m = static_cast<int>(arrangement.size());
  const int s = *std::max_element(base_labels.begin(), base_labels.end()) + 1;
  std::vector<std::vector<int>> atoms_of(s);
  for (int a = 0; a < m; ++a) atoms_of[base_labels[a]].push_back(a);
  std::vector<std::size_t> used(s, 0);
  Permutation psi(m);
  for (int a = 0; a < m; ++a) psi[a] = atoms_of[arrangement[a]][used[arrangement[a]]++];
  return psi;
}

class Objective {
 public:
  Objective(const Matrix& block1, const Kernel& k2, DistanceNorm norm, const CutNormConfig& cut)
      : block1_(block1), k2_(k2), norm_(norm), cut_(cut) {}

  Kernel difference(const std::vector<int>& arr) const {
    return expand_labels(block1_, arr) - k2_;
  }

  /// Upper bound on || k1^arr - k2 || in the target norm; exact for L1, L2 and
  /// for the cut norm within the exact enumeration limit.
  double value(const std::vector<int>& arr) const {
    const Kernel d = difference(arr);
    switch (norm_) {
      case DistanceNorm::L1: return weighted_norm(d, Norm::L1);
      case DistanceNorm::L2: return weighted_norm(d, Norm::L2);
      case DistanceNorm::Cut: return cutnorm_bracket(d, cut_).upper;
    }
    return 0.0;
  }

  /// Entrywise loss driving swap descent (the cut norm descends on squares).
  double loss(double diff) const { return norm_ == DistanceNorm::L1 ? std::abs(diff) : diff * diff; }

  double pair_cost(const std::vector<int>& arr, int a, int b) const {
    const int m = static_cast<int>(arr.size());
    double rows = 0.0;
    for (int y = 0; y < m; ++y) {
      rows += loss(block1_(arr[a], arr[y]) - k2_(a, y));
      rows += loss(block1_(arr[b], arr[y]) - k2_(b, y));
    }
    double overlap = 0.0;
    for (int x : {a, b})
      for (int y : {a, b}) overlap += loss(block1_(arr[x], arr[y]) - k2_(x, y));
    return 2.0 * rows - overlap;
  }

  void descend(std::vector<int>& arr) const {
    const int m = static_cast<int>(arr.size());
    for (int sweep = 0; sweep < 100; ++sweep) {
      bool improved = false;
      for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
          if (arr[a] == arr[b]) continue;
          const double before = pair_cost(arr, a, b);
          std::swap(arr[a], arr[b]);
          if (pair_cost(arr, a, b) < before - 1e-14) {
            improved = true;
          } else {
            std::swap(arr[a], arr[b]);
          }
        }
      if (!improved) break;
    }
  }

 private:
  const Matrix& block1_;
  const Kernel& k2_;
  DistanceNorm norm_;
  CutNormConfig cut_;
};

double degree(const Matrix& block, const Vector& pw, int p) { return block.row(p).dot(pw); }

}  // namespace

CommonRefinement common_refinement(const StepFunction& sf1, const StepFunction& sf2,
                                   int max_atoms) {
  for (int m = 1; m <= max_atoms; ++m) {
    if (!fits_grid(sf1.part_weights(), m) || !fits_grid(sf2.part_weights(), m)) continue;
    auto l1 = layout(sf1.part_weights(), m);
    auto l2 = layout(sf2.part_weights(), m);
    Kernel k1 = expand_labels(sf1.block(), l1);
    Kernel k2 = expand_labels(sf2.block(), l2);
    return CommonRefinement{m, std::move(l1), std::move(l2), std::move(k1), std::move(k2)};
  }
  throw Error(ErrorCode::IrrationalWeights,
              "part weights are not multiples of 1/m for any m <= " + std::to_string(max_atoms));
}

DistanceBracket delta_bracket(const StepFunction& sf1, const StepFunction& sf2, DistanceNorm norm,
                              const DistanceConfig& config) {
  const CommonRefinement ref = common_refinement(sf1, sf2, config.max_atoms);
  const int m = ref.m;
  CutNormConfig cut = config.cut;
  cut.threads = 1;
  const Objective objective(sf1.block(), ref.k2, norm, cut);

  DistanceBracket out;
  out.norm = norm;
  out.refinement_size = m;
  out.exact = m <= config.exact_atoms;

  std::vector<int> best_arr;
  double best = HUGE_VAL;
  if (out.exact) {
    // Distinct label arrangements cover every permutation of the refined atoms.
    std::vector<int> arr = ref.labels1;
    std::sort(arr.begin(), arr.end());
    do {
      const double v = objective.value(arr);
      if (v < best) {
        best = v;
        best_arr = arr;
      }
    } while (std::next_permutation(arr.begin(), arr.end()));
  } else {
    // (a) profile matching: atoms of both sides ordered by degree.
    const Vector& pw1 = sf1.part_weights();
    const Vector& pw2 = sf2.part_weights();
    std::vector<int> order2(m);
    std::iota(order2.begin(), order2.end(), 0);
    std::stable_sort(order2.begin(), order2.end(), [&](int a, int b) {
      return degree(sf2.block(), pw2, ref.labels2[a]) < degree(sf2.block(), pw2, ref.labels2[b]);
    });
    std::vector<int> labels1 = ref.labels1;
    std::stable_sort(labels1.begin(), labels1.end(), [&](int p, int q) {
      return degree(sf1.block(), pw1, p) < degree(sf1.block(), pw1, q);
    });
    std::vector<int> greedy(m);
    for (int i = 0; i < m; ++i) greedy[order2[i]] = labels1[i];
    best = objective.value(greedy);
    best_arr = greedy;

    // (b) swap descent from seeded random arrangements.
    std::vector<std::vector<int>> finals(config.starts);
    std::vector<double> values(config.starts);
    parallel_for(config.starts, config.threads, [&](std::int64_t s) {
      auto rng = stream_rng(config.seed, static_cast<std::uint64_t>(s));
      std::vector<int> arr = ref.labels1;
      std::shuffle(arr.begin(), arr.end(), rng);
      objective.descend(arr);
      values[s] = objective.value(arr);
      finals[s] = std::move(arr);
    });
    for (int s = 0; s < config.starts; ++s) {
      if (values[s] < best) {
        best = values[s];
        best_arr = finals[s];
      }
    }
  }
  out.upper = best;
  out.alignment = alignment_of(ref.labels1, best_arr);

  if (norm == DistanceNorm::Cut) {
    const SimpleGraph probes[] = {SimpleGraph::edge(), SimpleGraph::path(3), SimpleGraph::cycle(3),
                                  SimpleGraph::cycle(4), SimpleGraph::path(4),
                                  SimpleGraph::complete(4)};
    for (const auto& g : probes) {
      const double gap = std::abs(hom_density_step(g, sf1).value - hom_density_step(g, sf2).value);
      out.lower = std::max(out.lower, gap / (4.0 * g.edge_count()));
    }
    out.lower_is_heuristic_certificate = true;
  }
  return out;
}

}  // namespace graphon
