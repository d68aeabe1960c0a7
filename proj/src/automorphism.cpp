#include "graphon/automorphism.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

namespace graphon {

double AutomorphismGroup::order() const {
  double order = 1.0;
  for (int s : orbit_sizes) order *= s;
  return order;
}

bool is_automorphism(const Kernel& kernel, std::span<const int> g, double tol) {
  const int n = kernel.size();
  if (static_cast<int>(g.size()) != n || !is_permutation(g)) return false;
  for (int x = 0; x < n; ++x) {
    if (kernel.space().weight(g[x]) != kernel.space().weight(x)) return false;
  }
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      if (std::abs(kernel(g[x], g[y]) - kernel(x, y)) > tol) return false;
  return true;
}

namespace {

using Coloring = std::vector<int>;  // color rank per atom, ranks 0..c-1

int color_count(const Coloring& c) { return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1; }

bool is_discrete(const Coloring& c) { return color_count(c) == static_cast<int>(c.size()); }

std::vector<int> cell_sizes(const Coloring& c) {
  std::vector<int> sizes(color_count(c), 0);
  for (int x : c) ++sizes[x];
  return sizes;
}

template <typename Key>
Coloring rank_by(const std::vector<Key>& keys) {
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Coloring out(keys.size());
  for (std::size_t v = 0; v < keys.size(); ++v) {
    out[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
  }
  return out;
}

class Search {
 public:
  Search(const Kernel& kernel, double tol) : kernel_(kernel), tol_(tol), n_(kernel.size()) {
    // Entry values bucketed into classes; bucketing by sorted value keeps class ids canonical.
    std::vector<double> values(kernel.values().data(), kernel.values().data() + n_ * n_);
    std::sort(values.begin(), values.end());
    std::vector<double> reps;
    for (double v : values) {
      if (reps.empty() || v - reps.back() > tol_) reps.push_back(v);
    }
    value_class_.resize(n_ * n_);
    for (int y = 0; y < n_; ++y)
      for (int x = 0; x < n_; ++x) {
        const double v = kernel(x, y);
        auto it = std::upper_bound(reps.begin(), reps.end(), v);
        value_class_[x * n_ + y] = static_cast<int>(it - reps.begin()) - 1;
      }
  }

  AutomorphismGroup run() {
    std::vector<std::tuple<double, int>> initial(n_);
    for (int v = 0; v < n_; ++v) initial[v] = {kernel_.space().weight(v), cls(v, v)};
    build(refine(rank_by(initial)));
    // Stabilizer chain was filled deepest level first.
    std::reverse(base_.begin(), base_.end());
    std::reverse(orbit_sizes_.begin(), orbit_sizes_.end());
    return AutomorphismGroup{PermutationAction(kernel_.space(), generators_), base_, orbit_sizes_};
  }

 private:
  int cls(int x, int y) const { return value_class_[x * n_ + y]; }

  Coloring refine(Coloring c) const {
    int count = color_count(c);
    while (true) {
      std::vector<std::pair<int, std::vector<std::pair<int, int>>>> sig(n_);
      for (int v = 0; v < n_; ++v) {
        auto& nb = sig[v].second;
        nb.reserve(n_);
        for (int u = 0; u < n_; ++u) {
          if (u != v) nb.emplace_back(cls(v, u), c[u]);
        }
        std::sort(nb.begin(), nb.end());
        sig[v].first = c[v];
      }
      Coloring next = rank_by(sig);
      const int next_count = color_count(next);
      c = std::move(next);
      if (next_count == count) return c;
      count = next_count;
    }
  }

  Coloring individualize(const Coloring& c, int v) const {
    std::vector<int> keys(n_);
    for (int u = 0; u < n_; ++u) keys[u] = 2 * c[u] + (u == v ? 0 : 1);
    return refine(rank_by(keys));
  }

  // First non-singleton cell: (color, members in ascending atom order).
  std::pair<int, std::vector<int>> target_cell(const Coloring& c) const {
    auto sizes = cell_sizes(c);
    int target = static_cast<int>(std::find_if(sizes.begin(), sizes.end(), [](int s) { return s > 1; }) -
                                  sizes.begin());
    std::vector<int> members;
    for (int v = 0; v < n_; ++v)
      if (c[v] == target) members.push_back(v);
    return {target, members};
  }

  std::vector<int> orbit_of(int v) const {
    std::vector<char> seen(n_, 0);
    std::vector<int> orbit{v};
    seen[v] = 1;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const auto& g : generators_) {
        const int u = g[orbit[i]];
        if (!seen[u]) {
          seen[u] = 1;
          orbit.push_back(u);
        }
      }
    }
    return orbit;
  }

  // Leftmost path below `c`: colorings at each depth down to a discrete leaf.
  std::vector<Coloring> leftmost_path(Coloring c) const {
    std::vector<Coloring> path{c};
    while (!is_discrete(c)) {
      c = individualize(c, target_cell(c).second.front());
      path.push_back(c);
    }
    return path;
  }

  bool find_mapping(const Coloring& c, const std::vector<Coloring>& ref, std::size_t depth,
                    Permutation& found) const {
    if (cell_sizes(c) != cell_sizes(ref[depth])) return false;
    if (is_discrete(c)) {
      Permutation g(n_);
      std::vector<int> vertex_of(n_);
      for (int v = 0; v < n_; ++v) vertex_of[c[v]] = v;
      for (int a = 0; a < n_; ++a) g[a] = vertex_of[ref[depth][a]];
      if (!is_automorphism(kernel_, g, tol_)) return false;
      found = std::move(g);
      return true;
    }
    for (int u : target_cell(c).second) {
      if (find_mapping(individualize(c, u), ref, depth + 1, found)) return true;
    }
    return false;
  }

  void build(const Coloring& c) {
    if (is_discrete(c)) return;
    const auto [color, members] = target_cell(c);
    const int v = members.front();
    const Coloring below = individualize(c, v);
    build(below);
    const auto ref = leftmost_path(below);
    auto orbit = orbit_of(v);
    for (int w : members) {
      if (std::find(orbit.begin(), orbit.end(), w) != orbit.end()) continue;
      Permutation g;
      if (find_mapping(individualize(c, w), ref, 0, g)) {
        generators_.push_back(std::move(g));
        orbit = orbit_of(v);
      }
    }
    base_.push_back(v);
    orbit_sizes_.push_back(static_cast<int>(orbit.size()));
  }

  const Kernel& kernel_;
  double tol_;
  int n_;
  std::vector<int> value_class_;
  std::vector<Permutation> generators_;
  std::vector<int> base_;
  std::vector<int> orbit_sizes_;
};

}  // namespace

AutomorphismGroup automorphisms(const Kernel& kernel, const AutomorphismConfig& config) {
  if (kernel.size() > config.max_atoms) {
    throw Error(ErrorCode::TooLarge, "automorphism search limited to " +
                                         std::to_string(config.max_atoms) + " atoms");
  }
  return Search(kernel, config.value_tolerance).run();
}

}  // namespace graphon
