#include <cmath>
#include <set>

#include "doctest.h"
#include "sbarc/metric.hpp"
#include "sbarc/rng.hpp"

using namespace sbarc;

namespace {

Bar mkbar(std::vector<double> i, std::vector<double> j) {
  return Bar{std::move(i), std::move(j)};
}

Bar random_hook(Rng& rng, bool allow_top = false) {
  Bar b;
  b.i = {double(rng.below(20)) / 2.0, double(rng.below(20)) / 2.0};
  if (allow_top && rng.below(5) == 0) {
    b.j = {kInf, kInf};
  } else {
    b.j = {b.i[0] + double(1 + rng.below(10)) / 2.0,
           b.i[1] + double(1 + rng.below(10)) / 2.0};
  }
  return b;
}

}  // namespace

TEST_CASE("distance-to-zero formulas") {
  CHECK(hook_to_zero(mkbar({0, 0}, {5, 5})) == doctest::Approx(2.5));
  CHECK(hook_to_zero(mkbar({0, 0}, {kInf, kInf})) == kInf);
  CHECK(rect_to_zero(mkbar({0, 0}, {10, 2})) == doctest::Approx(1.0));
  CHECK(rect_to_zero(mkbar({0, 0}, {kInf, 2})) == doctest::Approx(1.0));
  CHECK(rect_to_zero(mkbar({0, 0}, {kInf, kInf})) == kInf);
}

TEST_CASE("pairwise distance formulas") {
  auto l = mkbar({0, 0}, {4, 4});
  CHECK(hook_distance(l, l) == 0.0);
  CHECK(hook_distance(l, mkbar({0, 0}, {5, 5})) == doctest::Approx(1.0));
  CHECK(hook_distance(mkbar({0, 0}, {1, 1}), mkbar({10, 10}, {11, 11})) ==
        doctest::Approx(0.5));
  // Two projective hooks: distance between the corners.
  CHECK(hook_distance(mkbar({0, 0}, {kInf, kInf}), mkbar({2, 1}, {kInf, kInf})) ==
        doctest::Approx(2.0));
  // Projective vs finite hook: infinite.
  CHECK(hook_distance(mkbar({0, 0}, {kInf, kInf}), mkbar({0, 0}, {9, 9})) == kInf);
  // Symmetry.
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    auto a = random_hook(rng, true), b = random_hook(rng, true);
    CHECK(hook_distance(a, b) == hook_distance(b, a));
    CHECK(rect_distance(a, b) == rect_distance(b, a));
  }
}

TEST_CASE("triangle inequality on random triples") {
  Rng rng(41);
  int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    auto a = random_hook(rng, true);
    auto b = random_hook(rng, true);
    auto c = random_hook(rng, true);
    double ab = hook_distance(a, b), bc = hook_distance(b, c),
           ac = hook_distance(a, c);
    if (ab < kInf && bc < kInf) CHECK(ac <= ab + bc + 1e-9);
    double ra = rect_distance(a, b), rb = rect_distance(b, c),
           rc = rect_distance(a, c);
    if (ra < kInf && rb < kInf) CHECK(rc <= ra + rb + 1e-9);
    // To-zero versions.
    double za = hook_to_zero(a), zb = hook_to_zero(b);
    if (ab < kInf && zb < kInf) CHECK(za <= ab + zb + 1e-9);
    double wa = rect_to_zero(a), wb = rect_to_zero(b);
    if (ra < kInf && wb < kInf) CHECK(wa <= ra + wb + 1e-9);
  }
}

TEST_CASE("epsilon matching and bottleneck basics") {
  std::vector<Bar> b1 = {mkbar({0, 0}, {2, 2}), mkbar({1, 1}, {3, 3})};
  auto [eps, match] = bottleneck(b1, b1, BarShape::Hook);
  CHECK(eps == 0.0);
  CHECK(match.pairs.size() == 2);

  // Single bar vs nothing: cost is its distance to zero.
  std::vector<Bar> single = {mkbar({0, 0}, {5, 5})};
  auto [eps2, match2] = bottleneck(single, {}, BarShape::Hook);
  CHECK(eps2 == doctest::Approx(2.5));
  CHECK(match2.unmatched_left.size() == 1);

  // A projective against nothing cannot be matched at any finite threshold.
  std::vector<Bar> proj = {mkbar({0, 0}, {kInf, kInf})};
  auto [eps3, match3] = bottleneck(proj, {}, BarShape::Hook);
  CHECK(eps3 == kInf);

  // Epsilon feasibility is monotone and tight.
  CHECK(!epsilon_matching(single, {}, BarShape::Hook, 2.4).has_value());
  CHECK(epsilon_matching(single, {}, BarShape::Hook, 2.5).has_value());
}

TEST_CASE("matched pairs and unmatched bars respect the threshold") {
  Rng rng(57);
  for (int t = 0; t < 50; ++t) {
    std::vector<Bar> b1, b2;
    for (int i = 0; i < int(rng.below(6)); ++i) b1.push_back(random_hook(rng));
    for (int i = 0; i < int(rng.below(6)); ++i) b2.push_back(random_hook(rng));
    auto [eps, match] = bottleneck(b1, b2, BarShape::Hook);
    REQUIRE(eps < kInf);
    for (auto& pr : match.pairs)
      CHECK(hook_distance(b1[pr.left], b2[pr.right]) <= eps + 1e-9);
    for (auto& u : match.unmatched_left)
      CHECK(hook_to_zero(b1[u.index]) <= eps + 1e-9);
    for (auto& u : match.unmatched_right)
      CHECK(hook_to_zero(b2[u.index]) <= eps + 1e-9);
    // Partial bijection.
    std::set<int> left, right;
    for (auto& pr : match.pairs) {
      CHECK(left.insert(pr.left).second);
      CHECK(right.insert(pr.right).second);
    }
    CHECK(left.size() + match.unmatched_left.size() == b1.size());
    CHECK(right.size() + match.unmatched_right.size() == b2.size());
    // Nothing below the found threshold is feasible.
    if (eps > 0) {
      double probe = eps - 1e-6;
      bool feasible = epsilon_matching(b1, b2, BarShape::Hook, probe).has_value();
      CHECK(!feasible);
    }
  }
}

TEST_CASE("bottleneck is symmetric and stable under adding matched bars") {
  Rng rng(58);
  for (int t = 0; t < 30; ++t) {
    std::vector<Bar> b1, b2;
    for (int i = 0; i < int(rng.below(5)); ++i) b1.push_back(random_hook(rng));
    for (int i = 0; i < int(rng.below(5)); ++i) b2.push_back(random_hook(rng));
    auto e1 = bottleneck(b1, b2, BarShape::Hook).first;
    auto e2 = bottleneck(b2, b1, BarShape::Hook).first;
    CHECK(e1 == doctest::Approx(e2));
    auto extra = random_hook(rng);
    auto c1 = b1, c2 = b2;
    c1.push_back(extra);
    c2.push_back(extra);
    CHECK(bottleneck(c1, c2, BarShape::Hook).first <= e1 + 1e-9);
  }
}

TEST_CASE("hook matchings transfer to the corresponding rectangles") {
  Rng rng(59);
  for (int t = 0; t < 1000; ++t) {
    // Finite-diagonal bars only.
    std::vector<Bar> b1, b2;
    for (int i = 0; i < 1 + int(rng.below(4)); ++i) b1.push_back(random_hook(rng));
    for (int i = 0; i < 1 + int(rng.below(4)); ++i) b2.push_back(random_hook(rng));
    // Pointwise inequalities.
    for (auto& a : b1)
      for (auto& b : b2) {
        CHECK(rect_distance(a, b) <= hook_distance(a, b) + 1e-12);
        CHECK(rect_to_zero(a) <= hook_to_zero(a) + 1e-12);
      }
    // An optimal hook matching is a valid rectangle matching at the same
    // threshold.
    auto [eps, match] = bottleneck(b1, b2, BarShape::Hook);
    REQUIRE(eps < kInf);
    for (auto& pr : match.pairs)
      CHECK(rect_distance(b1[pr.left], b2[pr.right]) <= eps + 1e-9);
    for (auto& u : match.unmatched_left)
      CHECK(rect_to_zero(b1[u.index]) <= eps + 1e-9);
    for (auto& u : match.unmatched_right)
      CHECK(rect_to_zero(b2[u.index]) <= eps + 1e-9);
    CHECK(bottleneck(b1, b2, BarShape::Rectangle).first <= eps + 1e-9);
  }
}

TEST_CASE("signed bottleneck crosses the parts") {
  SignedBarcode x;
  x.n = 2;
  x.shape = BarShape::Hook;
  x.positive = {mkbar({0, 0}, {0, 5}), mkbar({0, 0}, {5, 0})};
  x.negative = {mkbar({0, 0}, {5, 5})};
  auto self = signed_bottleneck(x, x);
  CHECK(self.epsilon == 0.0);

  SignedBarcode y;
  y.n = 2;
  y.shape = BarShape::Hook;
  y.positive = {mkbar({0, 0}, {0, 5}), mkbar({0, 0}, {4, 4}), mkbar({0, 0}, {5, 0})};
  y.negative = {mkbar({0, 0}, {5, 4}), mkbar({0, 0}, {4, 5})};
  auto sm = signed_bottleneck(x, y);
  CHECK(sm.epsilon == doctest::Approx(1.0));
  CHECK(sm.left.size() == x.positive.size() + y.negative.size());
  CHECK(sm.right.size() == y.positive.size() + x.negative.size());
  // Provenance labels identify each crossed bar.
  for (auto& t : sm.left) CHECK(((t.side == 'A' && t.sign == '+') ||
                                 (t.side == 'B' && t.sign == '-')));
  for (auto& t : sm.right) CHECK(((t.side == 'B' && t.sign == '+') ||
                                  (t.side == 'A' && t.sign == '-')));
}
