#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "graphon/automorphism.hpp"
#include "graphon/ensembles.hpp"
#include "test_support.hpp"

using namespace graphon;

namespace {

Kernel adjacency(int n, const std::vector<std::pair<int, int>>& edges) {
  Matrix a = Matrix::Zero(n, n);
  for (auto [u, v] : edges) a(u, v) = a(v, u) = 1.0;
  return kernel_from_matrix(a);
}

Kernel petersen() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
    e.emplace_back(i, 5 + i);
  }
  return adjacency(10, e);
}

// Independent oracle: count all permutations fixing the kernel.
std::size_t brute_force_order(const Kernel& k) {
  Permutation g(k.size());
  std::iota(g.begin(), g.end(), 0);
  std::size_t count = 0;
  do {
    bool ok = true;
    for (int x = 0; x < k.size() && ok; ++x)
      for (int y = 0; y < k.size() && ok; ++y) ok = k(g[x], g[y]) == k(x, y);
    if (ok) ++count;
  } while (std::next_permutation(g.begin(), g.end()));
  return count;
}

void check_group(const Kernel& k, const AutomorphismGroup& grp) {
  for (const auto& g : grp.action.generators()) CHECK(is_automorphism(k, g));
  CHECK(static_cast<double>(testing::group_closure_size(grp.action.generators(), k.size())) ==
        grp.order());
}

}  // namespace

TEST_CASE("cycle C_5 has the dihedral group of order 10") {
  Kernel c5 = adjacency(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  auto grp = automorphisms(c5);
  CHECK(brute_force_order(c5) == 10);
  CHECK(grp.order() == 10.0);
  check_group(c5, grp);
}

TEST_CASE("constant kernel gives the full symmetric group") {
  Kernel k = Kernel::constant(DiscreteSpace::uniform(6), 0.3);
  auto grp = automorphisms(k);
  CHECK(grp.order() == 720.0);
  check_group(k, grp);
}

TEST_CASE("distinct rows give the trivial group") {
  Matrix a(4, 4);
  a << 0, 1, 2, 3, 1, 0, 4, 5, 2, 4, 0, 6, 3, 5, 6, 0;
  auto grp = automorphisms(kernel_from_matrix(a));
  CHECK(grp.order() == 1.0);
  CHECK(grp.action.generators().empty());
}

TEST_CASE("Petersen graph has order 120") {
  Kernel p = petersen();
  auto grp = automorphisms(p);
  CHECK(grp.order() == 120.0);
  check_group(p, grp);
}

TEST_CASE("weights restrict the group") {
  Matrix a = Matrix::Constant(3, 3, 0.5);
  Vector w(3);
  w << 0.25, 0.25, 0.5;
  auto grp = automorphisms(kernel_from_matrix(a, w));
  CHECK(grp.order() == 2.0);
}

TEST_CASE("property: random small kernels agree with brute force") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 5;
    // Few distinct values so nontrivial symmetries occur.
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = static_cast<double>(rng() % 2);
    Kernel k = kernel_from_matrix(a);
    auto grp = automorphisms(k);
    CHECK(grp.order() == static_cast<double>(brute_force_order(k)));
    check_group(k, grp);
  }
}

TEST_CASE("Cayley kernels contain the rotations") {
  Kernel k = cayley_kernel(12, {0.9, 0.5, 0.1, -0.3, 0.2, 0.4, 0.7, 0.4, 0.2, -0.3, 0.1, 0.5});
  auto grp = automorphisms(k);
  CHECK(grp.order() >= 24.0);
  check_group(k, grp);
  Permutation shift(12);
  for (int i = 0; i < 12; ++i) shift[i] = (i + 1) % 12;
  CHECK(is_automorphism(k, shift));
}

TEST_CASE("size limit") {
  AutomorphismConfig cfg;
  cfg.max_atoms = 4;
  try {
    automorphisms(Kernel::zero(DiscreteSpace::uniform(5)), cfg);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}
