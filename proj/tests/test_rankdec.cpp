#include <algorithm>

#include "doctest.h"
#include "sbarc/experiments.hpp"
#include "sbarc/rankdec.hpp"
#include "sbarc/rng.hpp"

using namespace sbarc;

namespace {

Bar mkbar(std::vector<double> i, std::vector<double> j) {
  return Bar{std::move(i), std::move(j)};
}

bool same_bars(std::vector<Bar> a, std::vector<Bar> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

void check_disjoint(const SignedBarcode& sb) {
  for (const auto& p : sb.positive)
    for (const auto& n : sb.negative) CHECK(!(p == n));
}

}  // namespace

TEST_CASE("hook decomposition of a single hook") {
  auto grid = build_grid({{0, 1, 2}, {0, 1, 2}}, true);
  auto hk = hook_module(grid, grid->id_of({0, 0}), grid->id_of({1, 1}), 2);
  auto sb = mrd_hooks(*hk);
  REQUIRE(sb.positive.size() == 1);
  CHECK(sb.negative.empty());
  CHECK(sb.positive[0] == mkbar({0, 0}, {1, 1}));
}

TEST_CASE("hook decomposition agrees with the cancelled rank-exact barcode") {
  // On the L-shaped example the rank-exact barcode is already cancelled.
  auto pres = figure1_presentation();
  auto grid = compress_grades(pres);
  auto mod = realize(pres, grid);
  auto hooks = mrd_hooks(*mod);
  auto rkdec = to_signed_barcode(rank_exact_resolution(mod));
  auto cancelled = cancel_common(rkdec);
  CHECK(hooks.multiset_equal(cancelled));
  CHECK(same_bars(hooks.positive,
                  {mkbar({0, 0}, {0, 2}), mkbar({0, 0}, {1, 1}),
                   mkbar({0, 0}, {2, 0})}));
  CHECK(same_bars(hooks.negative,
                  {mkbar({0, 0}, {2, 1}), mkbar({0, 0}, {1, 2})}));

  // And on random modules, after cancelling with multiplicity.
  Rng rng(5);
  for (int t = 0; t < 25; ++t) {
    uint32_t p = (t % 2 == 0) ? 2 : 3;
    auto rp = random_presentation(rng, 2, 3, 1 + int(rng.below(3)),
                                  int(rng.below(3)), p);
    auto rg = compress_grades(rp);
    auto rm = realize(rp, rg);
    auto h = mrd_hooks(*rm);
    auto c = cancel_common(to_signed_barcode(rank_exact_resolution(rm)));
    CHECK(h.multiset_equal(c));
    check_disjoint(h);
    CHECK(verify_rank_decomposition(h, rank_invariant(*rm)).ok);
  }
}

TEST_CASE("rectangle decomposition of the union-of-rectangles module") {
  // M_{2,10}: union of [0,10)x[0,2) and [0,2)x[0,10).
  Presentation pres;
  pres.n = 2;
  pres.p = 2;
  pres.generators = {{0, 0}};
  pres.relations = {{{0, 10}, {{0, 1}}}, {{2, 2}, {{0, 1}}}, {{10, 0}, {{0, 1}}}};
  auto grid = compress_grades(pres);
  auto mod = realize(pres, grid);
  auto sb = mrd_rectangles(*mod);
  CHECK(same_bars(sb.positive, {mkbar({0, 0}, {2, 10}), mkbar({0, 0}, {10, 2})}));
  CHECK(same_bars(sb.negative, {mkbar({0, 0}, {2, 2})}));
}

TEST_CASE("rectangle decomposition of a single right-open rectangle") {
  Presentation pres;
  pres.n = 2;
  pres.p = 2;
  pres.generators = {{0, 0}};
  pres.relations = {{{3, 0}, {{0, 1}}}, {{0, 2}, {{0, 1}}}};
  auto mod = realize(pres, compress_grades(pres));
  auto sb = mrd_rectangles(*mod);
  REQUIRE(sb.positive.size() == 1);
  CHECK(sb.negative.empty());
  CHECK(sb.positive[0] == mkbar({0, 0}, {3, 2}));
}

TEST_CASE("rectangle decomposition separates right-open ends from infinity") {
  // Free module: one bar with both ends infinite.
  Presentation pres;
  pres.n = 2;
  pres.p = 2;
  pres.generators = {{0, 0}};
  auto mod = realize(pres, compress_grades(pres));
  auto sb = mrd_rectangles(*mod);
  REQUIRE(sb.positive.size() == 1);
  CHECK(sb.positive[0] == mkbar({0, 0}, {kInf, kInf}));
  // A hook: two mixed-infinity bars, one finite overlap.
  auto grid = build_grid({{0, 1, 2}, {0, 1, 2}}, true);
  auto hk = hook_module(grid, grid->id_of({0, 0}), grid->id_of({1, 1}), 2);
  auto hsb = mrd_rectangles(*hk);
  CHECK(same_bars(hsb.positive, {mkbar({0, 0}, {1, kInf}), mkbar({0, 0}, {kInf, 1})}));
  CHECK(same_bars(hsb.negative, {mkbar({0, 0}, {1, 1})}));
}

TEST_CASE("staircase rectangle bars match the closed-form family") {
  // k = l = 2 with generators (0,1),(1,0) and corners (3,4),(4,3).
  Presentation pres;
  pres.n = 2;
  pres.p = 2;
  pres.generators = {{0, 1}, {1, 0}};
  pres.relations = {{{1, 1}, {{0, 1}, {1, 1}}},
                    {{0, 4}, {{0, 1}}},
                    {{3, 3}, {{0, 1}}},
                    {{4, 0}, {{1, 1}}}};
  auto mod = realize(pres, compress_grades(pres));
  auto sb = mrd_rectangles(*mod);
  CHECK(same_bars(sb.positive,
                  {mkbar({0, 1}, {3, 4}), mkbar({0, 1}, {4, 3}),
                   mkbar({1, 0}, {3, 4}), mkbar({1, 0}, {4, 3}),
                   mkbar({1, 1}, {3, 3})}));
  CHECK(same_bars(sb.negative,
                  {mkbar({0, 1}, {3, 3}), mkbar({1, 0}, {3, 3}),
                   mkbar({1, 1}, {3, 4}), mkbar({1, 1}, {4, 3})}));
}

TEST_CASE("rectangle decomposition of hooks by inclusion-exclusion") {
  auto sb = mrd_rect_of_hook({0, 0}, {1, 1});
  CHECK(same_bars(sb.positive, {mkbar({0, 0}, {1, kInf}), mkbar({0, 0}, {kInf, 1})}));
  CHECK(same_bars(sb.negative, {mkbar({0, 0}, {1, 1})}));
  CHECK(sb.size() == 3);

  auto proj = mrd_rect_of_hook({2, 3}, {kInf, kInf});
  REQUIRE(proj.positive.size() == 1);
  CHECK(proj.negative.empty());
  CHECK(proj.positive[0] == mkbar({2, 3}, {kInf, kInf}));

  // One axis tight: a single rectangle.
  auto thin = mrd_rect_of_hook({0, 0}, {0, 2});
  REQUIRE(thin.positive.size() == 1);
  CHECK(thin.negative.empty());
  CHECK(thin.positive[0] == mkbar({0, 0}, {kInf, 2}));

  // Bound 2^n - 1 for random hooks, n = 3.
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> i(3), j(3);
    for (int k = 0; k < 3; ++k) {
      i[k] = double(rng.below(4));
      j[k] = i[k] + double(rng.below(3));
    }
    j[rng.below(3)] += 1;  // ensure i < j
    auto rsb = mrd_rect_of_hook(i, j);
    CHECK(rsb.size() <= 7);
  }
}

TEST_CASE("verification flags perturbed multiplicities") {
  auto grid = build_grid({{0, 1, 2}, {0, 1, 2}}, true);
  auto hk = hook_module(grid, grid->id_of({0, 0}), grid->id_of({1, 1}), 2);
  auto rk = rank_invariant(*hk);
  auto sb = mrd_hooks(*hk);
  CHECK(verify_rank_decomposition(sb, rk).ok);
  sb.positive.push_back(mkbar({1, 1}, {2, 2}));
  auto bad = verify_rank_decomposition(sb, rk);
  CHECK(!bad.ok);
  CHECK(bad.expected != bad.got);
}

TEST_CASE("random modules: hooks and rectangles both verify, three parameters") {
  Rng rng(29);
  for (int t = 0; t < 6; ++t) {
    auto pres = random_presentation(rng, 3, 2, 1 + int(rng.below(3)),
                                    int(rng.below(3)), 2);
    auto grid = compress_grades(pres);
    auto mod = realize(pres, grid);
    auto hooks = mrd_hooks(*mod);
    check_disjoint(hooks);
    CHECK(verify_rank_decomposition(hooks, rank_invariant(*mod)).ok);
    auto rect = mrd_rectangles(*mod);
    check_disjoint(rect);
    auto ext = sentinel_extension(*mod);
    CHECK(verify_rank_decomposition(rect, rank_invariant(*ext.module)).ok);
  }
}

TEST_CASE("hook decomposition of the square matches the hook dictionary") {
  // The square [0,c)^2 decomposes into two axis hooks minus the diagonal
  // hook, the hook-shaped analog of its rectangle decomposition.
  Presentation pres;
  pres.n = 2;
  pres.p = 2;
  pres.generators = {{0, 0}};
  pres.relations = {{{2, 0}, {{0, 1}}}, {{0, 2}, {{0, 1}}}};
  auto mod = realize(pres, compress_grades(pres));
  auto sb = mrd_hooks(*mod);
  CHECK(same_bars(sb.positive, {mkbar({0, 0}, {2, 0}), mkbar({0, 0}, {0, 2})}));
  CHECK(same_bars(sb.negative, {mkbar({0, 0}, {2, 2})}));

  // Direct sums of drifting squares and diagonal hooks: the hook summands
  // cancel the squares' negative parts, mirroring the rectangle family.
  auto grid = build_grid({{0, 2, 2.5, 3}, {0, 2, 2.5, 3}}, true);
  std::vector<ModulePtr> parts;
  std::vector<Bar> expected_pos;
  for (double c : {2.0, 2.5}) {
    std::set<int> square;
    for (int x = 0; x < grid->num_points(); ++x) {
      auto g = grid->grades_of(x);
      if (g[0] < c && g[1] < c) square.insert(x);
    }
    parts.push_back(interval_module(grid, square, 2));
    parts.push_back(hook_module(grid, grid->id_of({0, 0}),
                                grid->id_of_grades({c, c}), 2));
    expected_pos.push_back(mkbar({0, 0}, {c, 0}));
    expected_pos.push_back(mkbar({0, 0}, {0, c}));
  }
  auto family = direct_sum(parts);
  auto fsb = mrd_hooks(*family);
  // Squares contribute {L_{0,(c,0)}, L_{0,(0,c)}} - {L_{0,(c,c)}}; the hook
  // summands contribute +L_{0,(c,c)}, cancelling every negative bar.
  CHECK(same_bars(fsb.positive, expected_pos));
  CHECK(fsb.negative.empty());
}

TEST_CASE("rectangle size is controlled by the rank-exact size") {
  Rng rng(67);
  for (int t = 0; t < 15; ++t) {
    auto pres = random_presentation(rng, 2, 3, 1 + int(rng.below(3)),
                                    int(rng.below(3)), 2);
    auto mod = realize(pres, compress_grades(pres));
    long b_rk = 0;
    for (auto& deg : rank_exact_resolution(mod).res.betti)
      b_rk += long(deg.size());
    long b_rect = mrd_rectangles(*mod).size();
    CHECK(b_rect <= 3 * b_rk);  // (2^n - 1) at n = 2
  }
}

TEST_CASE("interval-sum fast path agrees with the module path") {
  auto grid = build_grid({{0, 1, 2}, {0, 1, 2}}, true);
  auto grid_flat = build_grid({{0, 1, 2}, {0, 1, 2}}, false);
  auto h1 = hook_module(grid, grid->id_of({0, 0}), grid->id_of({1, 1}), 2);
  auto h2 = hook_module(grid, grid->id_of({1, 0}), grid->id_of({2, 2}), 2);
  auto sum = direct_sum({h1, h2});
  IntervalSumModule formal;
  formal.grid = grid_flat;
  formal.p = 2;
  std::set<int> s1, s2;
  for (int x = 0; x < grid->num_points(); ++x) {
    if (h1->dim(x)) s1.insert(x);
    if (h2->dim(x)) s2.insert(x);
  }
  formal.supports = {s1, s2};
  CHECK(mrd_rectangles(formal).multiset_equal(mrd_rectangles(*sum)));
}
