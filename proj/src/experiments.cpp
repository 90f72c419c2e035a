#include "sbarc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"

namespace sbarc {

using ordered_json = nlohmann::ordered_json;

Presentation figure1_presentation(uint32_t p) {
  Presentation pres;
  pres.n = 2;
  pres.p = p;
  pres.generators = {{0, 0}};
  pres.relations = {{{0, 2}, {{0, 1}}}, {{1, 1}, {{0, 1}}}, {{2, 0}, {{0, 1}}}};
  return pres;
}

Presentation example52_m_presentation(uint32_t p) {
  Presentation pres;
  pres.n = 2;
  pres.p = p;
  pres.generators = {{0, 0}};
  pres.relations = {{{0, 5}, {{0, 1}}}, {{5, 0}, {{0, 1}}}};
  return pres;
}

Presentation example52_n_presentation(uint32_t p) {
  Presentation pres;
  pres.n = 2;
  pres.p = p;
  pres.generators = {{0, 0}};
  pres.relations = {{{0, 5}, {{0, 1}}}, {{4, 4}, {{0, 1}}}, {{5, 0}, {{0, 1}}}};
  return pres;
}

Presentation staircase_upset_presentation(int k, uint32_t p) {
  if (k < 1) throw std::invalid_argument("staircase: k must be >= 1");
  Presentation pres;
  pres.n = 2;
  pres.p = p;
  for (int i = 1; i <= k; ++i)
    pres.generators.push_back({double(i - 1), double(k - i)});
  for (int i = 1; i < k; ++i) {
    Presentation::Relation rel;
    rel.grade = {double(i), double(k - i)};  // g_i v g_{i+1}
    rel.column = {{i - 1, 1}, {i, p - 1}};
    pres.relations.push_back(std::move(rel));
  }
  return pres;
}

Presentation staircase_presentation(int k, uint32_t p) {
  Presentation pres = staircase_upset_presentation(k, p);
  // Quotient by the upset generated by the corner meets: the support becomes
  // the right-open staircase below the corners c_i = (k+i, 2k+1-i).
  auto kill = [&pres](double x, double y, int gen) {
    Presentation::Relation rel;
    rel.grade = {x, y};
    rel.column = {{gen, 1}};
    pres.relations.push_back(std::move(rel));
  };
  kill(0, double(2 * k), 0);  // ((g_1)_x, (c_1)_y)
  for (int b = 1; b < k; ++b)
    kill(double(k + b), double(2 * k - b), 0);  // c_b meet c_{b+1}
  kill(double(2 * k), 0, k - 1);               // ((c_k)_x, (g_k)_y)
  return pres;
}

InstabilityPair instability_pair(int k, uint32_t p) {
  if (k < 1) throw std::invalid_argument("instability: k must be >= 1");
  const double a = 2.0, b = 10.0;
  const double eps = 1.0 / double(k + 1);
  std::vector<double> corners;
  for (int i = 0; i <= k + 1; ++i) corners.push_back(a + double(i) * eps);
  std::set<double> axis{0.0, b};
  axis.insert(corners.begin(), corners.end());
  std::vector<double> coords(axis.begin(), axis.end());
  auto grid = build_grid({coords, coords}, false);

  auto union_module_support = [&](double c) {
    std::set<int> s;
    for (int x = 0; x < grid->num_points(); ++x) {
      auto g = grid->grades_of(x);
      if ((g[0] < b && g[1] < c) || (g[0] < c && g[1] < b)) s.insert(x);
    }
    return s;
  };
  auto square_support = [&](double c) {
    std::set<int> s;
    for (int x = 0; x < grid->num_points(); ++x) {
      auto g = grid->grades_of(x);
      if (g[0] < c && g[1] < c) s.insert(x);
    }
    return s;
  };

  InstabilityPair out;
  out.eps = eps;
  out.a.grid = out.b.grid = grid;
  out.a.p = out.b.p = p;
  for (int i = 0; i <= k; ++i) {
    out.a.supports.push_back(union_module_support(corners[i]));
    out.a.supports.push_back(square_support(corners[i]));
    out.b.supports.push_back(union_module_support(corners[i]));
    out.b.supports.push_back(square_support(corners[i + 1]));
  }
  return out;
}

Presentation random_presentation(Rng& rng, int n, int grid_size, int gens,
                                 int rels, uint32_t p) {
  Presentation pres;
  pres.n = n;
  pres.p = p;
  for (int g = 0; g < gens; ++g) {
    std::vector<double> grade(n);
    for (int k = 0; k < n; ++k) grade[k] = double(rng.below(grid_size));
    pres.generators.push_back(std::move(grade));
  }
  for (int r = 0; r < rels; ++r) {
    Presentation::Relation rel;
    rel.grade.resize(n);
    for (int k = 0; k < n; ++k) rel.grade[k] = double(rng.below(grid_size));
    for (int g = 0; g < gens; ++g) {
      bool below = true;
      for (int k = 0; k < n; ++k)
        if (pres.generators[g][k] > rel.grade[k]) below = false;
      if (below && rng.below(2) == 0)
        rel.column.emplace_back(g, 1 + uint32_t(rng.below(p - 1)));
    }
    pres.relations.push_back(std::move(rel));
  }
  return pres;
}

ModulePtr restrict_to_grid(const PersistenceModule& m, GridPtr subgrid) {
  auto big = m.grid();
  std::vector<int> embed(subgrid->num_points());
  for (int x = 0; x < subgrid->num_points(); ++x) {
    int id = big->id_of_grades(subgrid->grades_of(x));
    if (id < 0) throw std::invalid_argument("restrict: subgrid grade off-grid");
    embed[x] = id;
  }
  auto out = std::make_shared<PersistenceModule>(subgrid, m.p());
  for (int x = 0; x < subgrid->num_points(); ++x) out->set_dim(x, m.dim(embed[x]));
  for (int x = 0; x < subgrid->num_points(); ++x) {
    auto idx = subgrid->index_of(x);
    for (int k = 0; k < subgrid->n(); ++k) {
      if (idx[k] + 1 >= subgrid->shape()[k]) continue;
      auto up = idx;
      ++up[k];
      int y = subgrid->id_of(up);
      out->set_step(x, k, m.structure_map(embed[x], embed[y]));
    }
  }
  return out;
}

SignedBarcode rank_exact_barcode(const Presentation& pres) {
  auto grid = compress_grades(pres);
  auto mod = realize(pres, grid);
  return to_signed_barcode(rank_exact_resolution(mod));
}

SignedBarcode rank_exact_on_minimized_grid(const Presentation& pres) {
  auto grid = compress_grades(pres);
  auto mod = realize(pres, grid);
  auto betti = usual_betti(mod);
  if (betti.empty() || betti[0].empty()) {
    SignedBarcode empty;
    empty.n = pres.n;
    empty.p = pres.p;
    empty.shape = BarShape::Hook;
    return empty;
  }
  std::vector<std::set<double>> axes(pres.n);
  for (size_t k = 0; k < betti.size() && k < 2; ++k)
    for (int point : betti[k]) {
      auto g = grid->grades_of(point);
      for (int ax = 0; ax < pres.n; ++ax) axes[ax].insert(g[ax]);
    }
  std::vector<std::vector<double>> coords(pres.n);
  for (int ax = 0; ax < pres.n; ++ax)
    coords[ax].assign(axes[ax].begin(), axes[ax].end());
  auto minimized = build_grid(std::move(coords), true);
  auto restricted = restrict_to_grid(*mod, minimized);
  return to_signed_barcode(rank_exact_resolution(restricted));
}

namespace {

ordered_json bar_json(const Bar& bar) {
  ordered_json o;
  auto coords = [](const std::vector<double>& v) {
    ordered_json arr = ordered_json::array();
    for (double x : v) {
      if (x == kInf)
        arr.push_back("inf");
      else
        arr.push_back(x);
    }
    return arr;
  };
  o["i"] = coords(bar.i);
  o["j"] = coords(bar.j);
  return o;
}

ordered_json barcode_summary(const SignedBarcode& sb) {
  ordered_json o;
  o["positive"] = ordered_json::array();
  o["negative"] = ordered_json::array();
  auto pos = sb.positive, neg = sb.negative;
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());
  for (const auto& b : pos) o["positive"].push_back(bar_json(b));
  for (const auto& b : neg) o["negative"].push_back(bar_json(b));
  return o;
}

Bar hook_bar(std::vector<double> i, std::vector<double> j) {
  return Bar{std::move(i), std::move(j)};
}

long require_param(const std::map<std::string, long>& params,
                   const std::string& key, long fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

ExperimentReport finish(const std::string& id, bool passed, ordered_json j) {
  j["passed"] = passed;
  ExperimentReport out;
  out.id = id;
  out.passed = passed;
  out.json = j.dump(2);
  return out;
}

ExperimentReport run_figure1(uint64_t seed, uint32_t p) {
  ordered_json j;
  j["experiment"] = "figure1";
  j["seed"] = seed;
  j["p"] = p;
  j["rng"] = Rng::kName;
  auto sb = rank_exact_barcode(figure1_presentation(p));
  SignedBarcode expected;
  expected.n = 2;
  expected.shape = BarShape::Hook;
  expected.positive = {hook_bar({0, 0}, {0, 2}), hook_bar({0, 0}, {1, 1}),
                       hook_bar({0, 0}, {2, 0})};
  expected.negative = {hook_bar({0, 0}, {2, 1}), hook_bar({0, 0}, {1, 2})};
  bool ok = sb.multiset_equal(expected);
  j["barcode"] = barcode_summary(sb);
  j["expected"] = barcode_summary(expected);
  return finish("figure1", ok, std::move(j));
}

ExperimentReport run_example52(uint64_t seed, uint32_t p) {
  ordered_json j;
  j["experiment"] = "example52";
  j["seed"] = seed;
  j["p"] = p;
  j["rng"] = Rng::kName;
  auto sm = rank_exact_barcode(example52_m_presentation(p));
  auto sn = rank_exact_barcode(example52_n_presentation(p));
  SignedBarcode em, en;
  em.n = en.n = 2;
  em.positive = {hook_bar({0, 0}, {0, 5}), hook_bar({0, 0}, {5, 0})};
  em.negative = {hook_bar({0, 0}, {5, 5})};
  en.positive = {hook_bar({0, 0}, {0, 5}), hook_bar({0, 0}, {4, 4}),
                 hook_bar({0, 0}, {5, 0})};
  en.negative = {hook_bar({0, 0}, {5, 4}), hook_bar({0, 0}, {4, 5})};
  auto match = signed_bottleneck(sm, sn);
  bool ok = sm.multiset_equal(em) && sn.multiset_equal(en) &&
            std::fabs(match.epsilon - 1.0) <= 1e-9;
  j["barcode_m"] = barcode_summary(sm);
  j["barcode_n"] = barcode_summary(sn);
  j["signed_bottleneck"] = match.epsilon;
  return finish("example52", ok, std::move(j));
}

ExperimentReport run_instability(uint64_t seed, uint32_t p,
                                 const std::map<std::string, long>& params) {
  ordered_json j;
  j["experiment"] = "instability";
  j["seed"] = seed;
  j["p"] = p;
  j["rng"] = Rng::kName;
  ordered_json records = ordered_json::array();
  bool ok = true;
  std::vector<long> ks;
  if (params.count("k"))
    ks = {params.at("k")};
  else
    ks = {4, 9, 19};
  for (long k : ks) {
    auto pair = instability_pair(int(k), p);
    auto da = mrd_rectangles(pair.a);
    auto db = mrd_rectangles(pair.b);
    auto match = signed_bottleneck(da, db);
    bool rec_ok = match.epsilon >= 1.0 - 1e-9;
    ok = ok && rec_ok;
    ordered_json rec;
    rec["k"] = k;
    rec["interleaving_bound"] = pair.eps / 2.0;
    rec["bars_a"] = da.size();
    rec["bars_b"] = db.size();
    rec["signed_bottleneck"] = match.epsilon;
    rec["ok"] = rec_ok;
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  return finish("instability", ok, std::move(j));
}

ExperimentReport run_staircase(uint64_t seed, uint32_t p,
                               const std::map<std::string, long>& params) {
  ordered_json j;
  j["experiment"] = "staircase";
  j["seed"] = seed;
  j["p"] = p;
  j["rng"] = Rng::kName;
  long kmin = require_param(params, "kmin", 2);
  long kmax = require_param(params, "kmax", 6);
  ordered_json records = ordered_json::array();
  bool ok = true;
  for (long k = kmin; k <= kmax; ++k) {
    auto pres = staircase_presentation(int(k), p);
    auto grid = compress_grades(pres);
    auto mod = realize(pres, grid);
    long b = 0;
    for (auto& deg : usual_betti(mod)) b += long(deg.size());
    auto rk = rank_exact_resolution(mod);
    long b_rk = 0;
    for (auto& deg : rk.res.betti) b_rk += long(deg.size());
    auto rect = mrd_rectangles(*mod);
    long b_rect = rect.size();
    // Upset staircase: total Betti size must be exactly 2k-1.
    auto up_pres = staircase_upset_presentation(int(k), p);
    auto up_mod = realize(up_pres, compress_grades(up_pres));
    long b_up = 0;
    for (auto& deg : usual_betti(up_mod)) b_up += long(deg.size());
    bool rec_ok = b <= 4 * k && b_rect >= k * k && 3 * b_rk >= k * k &&
                  b_up == 2 * k - 1;
    ok = ok && rec_ok;
    ordered_json rec;
    rec["k"] = k;
    rec["b"] = b;
    rec["b_rk"] = b_rk;
    rec["b_rect"] = b_rect;
    rec["b_upset_staircase"] = b_up;
    rec["b_rk_over_b_cubed"] = double(b_rk) / double(b * b * b);
    rec["ok"] = rec_ok;
    records.push_back(std::move(rec));
  }
  // The general upper bound (4b)^((2n+1)^(2n-1)) is reported for context
  // only; at n = 2 the exponent is 125, far beyond anything reachable here.
  j["upper_bound_exponent"] = 125;
  j["records"] = std::move(records);
  return finish("staircase", ok, std::move(j));
}

ExperimentReport run_gldim_rank(uint64_t seed, uint32_t p,
                                const std::map<std::string, long>& params) {
  ordered_json j;
  j["experiment"] = "gldim-rank";
  j["seed"] = seed;
  j["p"] = p;
  j["rng"] = Rng::kName;
  long m = require_param(params, "m", 3);
  long n = require_param(params, "n", 2);
  long trials = require_param(params, "trials", 200);
  Rng rng(seed);
  std::vector<std::vector<double>> axes(n);
  for (int k = 0; k < n; ++k)
    for (int v = 0; v < m; ++v) axes[k].push_back(double(v));
  auto grid = build_grid(axes, true);
  auto pairs = QuotientPoset::pairs_poset(grid);
  int max_depth_seen = 0;
  for (long t = 0; t < trials; ++t) {
    auto pres = random_presentation(rng, int(n), int(m), 1 + int(rng.below(3)),
                                    int(rng.below(4)), p);
    auto mod = realize(pres, grid);
    auto res = rank_exact_resolution(mod, pairs);
    max_depth_seen = std::max(max_depth_seen, res.res.length);
  }
  auto witness = rank_gldim_witness(int(n), int(m), p);
  int expected = int(2 * n - 2);
  bool ok = max_depth_seen <= expected && witness.achieved_pdim == expected;
  j["m"] = m;
  j["n"] = n;
  j["trials"] = trials;
  j["max_random_depth"] = max_depth_seen;
  j["witness_depth"] = witness.achieved_pdim;
  j["expected_gldim"] = expected;
  return finish("gldim-rank", ok, std::move(j));
}

ExperimentReport run_gldim_upset(uint64_t seed, uint32_t p,
                                 const std::map<std::string, long>& params) {
  ordered_json j;
  j["experiment"] = "gldim-upset";
  j["seed"] = seed;
  j["p"] = p;
  j["rng"] = Rng::kName;
  long m = require_param(params, "m", 3);
  long trials = require_param(params, "trials", 100);
  Rng rng(seed);
  std::vector<std::vector<double>> axes(2);
  for (int k = 0; k < 2; ++k)
    for (int v = 0; v < m; ++v) axes[k].push_back(double(v));
  auto grid = build_grid(axes, false);
  auto upsets = QuotientPoset::upset_poset(grid);
  int max_depth_seen = 0;
  for (long t = 0; t < trials; ++t) {
    auto pres = random_presentation(rng, 2, int(m), 1 + int(rng.below(3)),
                                    int(rng.below(4)), p);
    auto mod = realize(pres, compress_grades(pres));
    auto full = extend_to_grid(*mod, grid);  // the same module on [m]^2
    auto hom = hom_from_upsets(full, upsets);
    auto res = minimal_resolution(hom, int(m) + 2);
    max_depth_seen = std::max(max_depth_seen, res.length);
  }
  auto witness = upset_gldim_witness(int(m), p);
  int expected = int(m - 2);
  bool ok = max_depth_seen <= expected && witness.achieved_pdim == expected;
  j["m"] = m;
  j["trials"] = trials;
  j["max_random_depth"] = max_depth_seen;
  j["witness_depth"] = witness.achieved_pdim;
  j["expected_gldim"] = expected;
  return finish("gldim-upset", ok, std::move(j));
}

ExperimentReport run_stability_sweep(uint64_t seed, uint32_t p,
                                     const std::map<std::string, long>& params) {
  ordered_json j;
  j["experiment"] = "stability-sweep";
  j["seed"] = seed;
  j["p"] = p;
  j["rng"] = Rng::kName;
  long trials = require_param(params, "trials", 100);
  Rng rng(seed);
  const int n = 2;
  const double bound_factor = double((2 * n - 1) * (2 * n - 1));
  bool ok = true;
  double worst_ratio = 0.0;
  ordered_json records = ordered_json::array();
  for (long t = 0; t < trials; ++t) {
    // Grades live on a uniform lattice with spacing eps. The comparison
    // module is the eps-diagonal translation of the base presentation plus
    // hook summands whose endpoints move by at most one lattice step, so the
    // pair is eps-interleaved by construction.
    const double eps_choices[3] = {0.25, 0.5, 1.0};
    double eps = eps_choices[rng.below(3)];
    const int levels = 4;
    auto pres_m = random_presentation(rng, n, levels, 1 + int(rng.below(3)),
                                      int(rng.below(3)), p);
    auto pres_n = pres_m;
    for (auto& g : pres_n.generators)
      for (auto& c : g) c -= 1.0;
    for (auto& r : pres_n.relations)
      for (auto& c : r.grade) c -= 1.0;
    int nhooks = 1 + int(rng.below(3));
    for (int h = 0; h < nhooks; ++h) {
      std::vector<double> lo(n), hi(n), lo2(n), hi2(n);
      bool to_top = rng.below(4) == 0;
      for (int k = 0; k < n; ++k) {
        lo[k] = double(rng.below(levels - 1));
        hi[k] = lo[k] + 1 + double(rng.below(levels - int(lo[k]) - 1));
        lo2[k] = std::clamp(lo[k] + double(rng.range(-1, 1)), 0.0, hi[k] - 1);
        hi2[k] = std::max(hi[k] + double(rng.range(-1, 1)), lo2[k] + 1);
      }
      auto add_hook = [](Presentation& pres, const std::vector<double>& a,
                         const std::vector<double>& b, bool projective) {
        int gen = int(pres.generators.size());
        pres.generators.push_back(a);
        if (!projective) pres.relations.push_back({b, {{gen, 1}}});
      };
      add_hook(pres_m, lo, hi, to_top);
      add_hook(pres_n, lo2, hi2, to_top);
    }
    auto scale = [eps](Presentation& pres) {
      for (auto& g : pres.generators)
        for (auto& c : g) c *= eps;
      for (auto& r : pres.relations)
        for (auto& c : r.grade) c *= eps;
    };
    scale(pres_m);
    scale(pres_n);
    auto b1 = rank_exact_barcode(pres_m);
    auto b2 = rank_exact_barcode(pres_n);
    auto match = signed_bottleneck(b1, b2);
    double ratio = match.epsilon / eps;
    worst_ratio = std::max(worst_ratio, ratio);
    bool rec_ok = match.epsilon <= bound_factor * eps + 1e-9;
    ok = ok && rec_ok;
    if (!rec_ok) {
      ordered_json rec;
      rec["trial"] = t;
      rec["eps"] = eps;
      rec["signed_bottleneck"] = match.epsilon;
      records.push_back(std::move(rec));
    }
  }
  j["trials"] = trials;
  j["bound_factor"] = bound_factor;
  j["worst_ratio"] = worst_ratio;
  j["violations"] = std::move(records);
  return finish("stability-sweep", ok, std::move(j));
}

}  // namespace

ExperimentReport run_experiment(const std::string& experiment, uint64_t seed,
                                uint32_t p, int max_depth,
                                const std::map<std::string, long>& params) {
  (void)max_depth;
  if (experiment == "figure1") return run_figure1(seed, p);
  if (experiment == "example52") return run_example52(seed, p);
  if (experiment == "instability") return run_instability(seed, p, params);
  if (experiment == "staircase") return run_staircase(seed, p, params);
  if (experiment == "gldim-rank") return run_gldim_rank(seed, p, params);
  if (experiment == "gldim-upset") return run_gldim_upset(seed, p, params);
  if (experiment == "stability-sweep") return run_stability_sweep(seed, p, params);
  throw std::invalid_argument("unknown experiment '" + experiment + "'");
}

}  // namespace sbarc
