#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "graphon/cutnorm.hpp"
#include "graphon/distance.hpp"
#include "test_support.hpp"

using namespace graphon;

namespace {

StepFunction uniform_step(int s, const Matrix& block) {
  std::vector<int> labels(s);
  std::iota(labels.begin(), labels.end(), 0);
  return StepFunction(DiscreteSpace::uniform(s), labels, block);
}

StepFunction weighted_step(const std::vector<double>& w, const Matrix& block) {
  Vector v(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i];
  std::vector<int> labels(w.size());
  std::iota(labels.begin(), labels.end(), 0);
  return StepFunction(DiscreteSpace(v), labels, block);
}

double norm_of(const Kernel& k, DistanceNorm which) {
  switch (which) {
    case DistanceNorm::L1: return weighted_norm(k, Norm::L1);
    case DistanceNorm::L2: return weighted_norm(k, Norm::L2);
    case DistanceNorm::Cut: return cutnorm_exact(k).lower;
  }
  return 0.0;
}

// Independent oracle: all m! permutations of the refined space.
double enumerate_minimum(const CommonRefinement& r, DistanceNorm which) {
  Permutation g(r.m);
  std::iota(g.begin(), g.end(), 0);
  double best = HUGE_VAL;
  do {
    best = std::min(best, norm_of(apply_permutation(r.k1, g) - r.k2, which));
  } while (std::next_permutation(g.begin(), g.end()));
  return best;
}

}  // namespace

TEST_CASE("common_refinement") {
  SUBCASE("uniform two-part inputs") {
    auto r = common_refinement(uniform_step(2, Matrix::Identity(2, 2)),
                               uniform_step(2, Matrix::Ones(2, 2)));
    CHECK(r.m == 2);
  }
  SUBCASE("thirds against halves") {
    auto r = common_refinement(weighted_step({1.0 / 3, 2.0 / 3}, Matrix::Identity(2, 2)),
                               weighted_step({0.5, 0.5}, Matrix::Identity(2, 2)));
    CHECK(r.m == 6);
    CHECK(std::count(r.labels1.begin(), r.labels1.end(), 0) == 2);
    CHECK(std::count(r.labels2.begin(), r.labels2.end(), 0) == 3);
    CHECK(r.k1.space().is_uniform());
  }
  SUBCASE("identical inputs expand to equal kernels") {
    Matrix b(3, 3);
    b << 0.1, 0.2, 0.3, 0.2, 0.5, 0.6, 0.3, 0.6, 0.9;
    auto sf = weighted_step({0.25, 0.5, 0.25}, b);
    auto r = common_refinement(sf, sf);
    CHECK(r.m == 4);
    CHECK(r.k1.values() == r.k2.values());
  }
  SUBCASE("weights off the grid") {
    const double a = 1.0 / M_PI;
    try {
      common_refinement(weighted_step({a, 1 - a}, Matrix::Identity(2, 2)),
                        uniform_step(2, Matrix::Identity(2, 2)));
      FAIL("expected IrrationalWeights");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IrrationalWeights);
    }
  }
}

TEST_CASE("delta_bracket basics") {
  Matrix b(3, 3);
  b << 0.9, 0.2, 0.4, 0.2, 0.1, 0.7, 0.4, 0.7, 0.3;
  auto sf = uniform_step(3, b);
  SUBCASE("self distance is zero") {
    for (auto norm : {DistanceNorm::L1, DistanceNorm::L2, DistanceNorm::Cut}) {
      auto d = delta_bracket(sf, sf, norm);
      CHECK(d.upper == 0.0);
      CHECK(d.lower == 0.0);
      CHECK(d.exact);
    }
  }
  SUBCASE("relabeled copy is found") {
    StepFunction moved(DiscreteSpace::uniform(3), {2, 0, 1}, b);
    for (auto norm : {DistanceNorm::L1, DistanceNorm::L2, DistanceNorm::Cut})
      CHECK(delta_bracket(moved, sf, norm).upper <= 1e-15);
  }
  SUBCASE("constants") {
    auto p = uniform_step(1, Matrix::Constant(1, 1, 0.7));
    auto q = uniform_step(1, Matrix::Constant(1, 1, 0.2));
    for (auto norm : {DistanceNorm::L1, DistanceNorm::L2, DistanceNorm::Cut}) {
      auto d = delta_bracket(p, q, norm);
      CHECK(d.upper == doctest::Approx(0.5));
      CHECK(d.lower <= d.upper + 1e-12);
    }
    auto cut = delta_bracket(p, q, DistanceNorm::Cut);
    CHECK(cut.lower_is_heuristic_certificate);
    CHECK(cut.lower == doctest::Approx(0.125));
  }
}

TEST_CASE("property: exact regime equals full enumeration, and is symmetric") {
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const int s1 = 2 + trial % 3, s2 = 2 + (trial / 3) % 3;
    auto a = uniform_step(s1, testing::random_symmetric(s1, rng, 0.0, 1.0));
    auto b = uniform_step(s2, testing::random_symmetric(s2, rng, 0.0, 1.0));
    const auto r = common_refinement(a, b);
    if (r.m > 8) continue;
    for (auto norm : {DistanceNorm::L1, DistanceNorm::L2, DistanceNorm::Cut}) {
      auto ab = delta_bracket(a, b, norm);
      auto ba = delta_bracket(b, a, norm);
      CHECK(ab.exact);
      CHECK(std::abs(ab.upper - enumerate_minimum(r, norm)) <= 1e-12);
      CHECK(std::abs(ab.upper - ba.upper) <= 1e-12);
      CHECK(ab.lower <= ab.upper + 1e-12);
      // The reported alignment attains the upper bound.
      CHECK(std::abs(norm_of(apply_permutation(r.k1, ab.alignment) - r.k2, norm) - ab.upper) <=
            1e-12);
    }
    CHECK(delta_bracket(a, b, DistanceNorm::Cut).upper <=
          delta_bracket(a, b, DistanceNorm::L1).upper + 1e-12);
  }
}

TEST_CASE("heuristic regime") {
  std::mt19937_64 rng(82);
  auto a = uniform_step(12, testing::random_symmetric(12, rng, 0.0, 1.0));
  // Same step function with parts relabeled: the greedy matching should recover it.
  std::vector<int> perm(12);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  StepFunction b(DiscreteSpace::uniform(12), perm, a.block());
  DistanceConfig cfg;
  cfg.seed = 4;
  auto d = delta_bracket(a, b, DistanceNorm::L2, cfg);
  CHECK_FALSE(d.exact);
  CHECK(d.upper <= 1e-12);
  cfg.threads = 3;
  auto again = delta_bracket(a, b, DistanceNorm::L2, cfg);
  CHECK(again.upper == d.upper);
  CHECK(again.alignment == d.alignment);

  auto c = uniform_step(12, testing::random_symmetric(12, rng, 0.0, 1.0));
  for (auto norm : {DistanceNorm::L1, DistanceNorm::L2, DistanceNorm::Cut}) {
    auto e = delta_bracket(a, c, norm, cfg);
    CHECK(e.lower <= e.upper + 1e-12);
    CHECK(e.refinement_size == 12);
  }
}
