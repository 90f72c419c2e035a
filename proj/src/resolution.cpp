#include "sbarc/resolution.hpp"

#include <algorithm>

namespace sbarc {

FpMatrix PosetAlgebraModule::map(int q, int r) const {
  if (q == r) return FpMatrix::identity(dims[q], p);
  if (dims[q] == 0 || dims[r] == 0 || !poset->survives(q, r))
    return FpMatrix(dims[r], dims[q], p);
  return mapper(q, r);
}

int PosetAlgebraModule::total_dim() const {
  int t = 0;
  for (int d : dims) t += d;
  return t;
}

bool PosetAlgebraModule::is_zero() const { return total_dim() == 0; }

std::vector<int> PosetAlgebraModule::active() const {
  std::vector<int> out;
  for (int i = 0; i < int(dims.size()); ++i)
    if (dims[i] > 0) out.push_back(i);
  return out;
}

void PosetAlgebraModule::check_functoriality() const {
  const auto& ps = *poset;
  for (int q = 0; q < ps.size(); ++q) {
    if (dims[q] == 0) continue;
    if (ps.forbidden(q)) throw std::runtime_error("algebra module: nonzero on Q");
    for (int r = 0; r < ps.size(); ++r) {
      if (q == r || !ps.leq(q, r) || dims[r] == 0) continue;
      if (!ps.survives(q, r)) continue;
      for (int s = 0; s < ps.size(); ++s) {
        if (r == s || !ps.leq(r, s) || dims[s] == 0) continue;
        FpMatrix through = map(r, s) * map(q, r);
        FpMatrix direct = map(q, s);  // zero when (q,s) is killed
        if (!(through == direct))
          throw std::runtime_error("algebra module: maps not functorial");
      }
    }
  }
}

PosetAlgebraModule simple_at(QPosetPtr poset, int elem, uint32_t p) {
  if (poset->forbidden(elem))
    throw std::invalid_argument("simple_at: element is forbidden");
  PosetAlgebraModule n;
  n.poset = std::move(poset);
  n.p = p;
  n.dims.assign(n.poset->size(), 0);
  n.dims[elem] = 1;
  n.mapper = [p](int, int) { return FpMatrix(1, 1, p); };
  return n;
}

PosetAlgebraModule projective_at(QPosetPtr poset, int elem, uint32_t p) {
  if (poset->forbidden(elem))
    throw std::invalid_argument("projective_at: element is forbidden");
  PosetAlgebraModule n;
  n.poset = poset;
  n.p = p;
  n.dims.assign(poset->size(), 0);
  for (int r = 0; r < poset->size(); ++r)
    if (poset->survives(elem, r)) n.dims[r] = 1;
  n.mapper = [poset, elem, p](int, int r) {
    FpMatrix m(1, 1, p);
    if (poset->survives(elem, r)) m.set(0, 0, 1);
    return m;
  };
  return n;
}

Top top(const PosetAlgebraModule& n) {
  const auto& ps = *n.poset;
  Top out;
  auto act = n.active();
  for (int r : act) {
    // Radical at r: the sum of the images of all surviving strict arrows in.
    // Every surviving arrow factors through an element covered by r (the
    // factor pairs survive by downward closure, and a forbidden intermediate
    // would kill the arrow itself), so the down-covers span the same sum.
    FpMatrix rad(n.dims[r], 0, n.p);
    for (int q : ps.covers_below(r)) {
      if (n.dims[q] == 0 || !ps.survives(q, r)) continue;
      rad = FpMatrix::hstack(rad, n.map(q, r));
    }
    auto qb = quotient_basis(n.dims[r], rad);
    for (int c : qb.complement) {
      out.elems.push_back(r);
      std::vector<uint32_t> lift(n.dims[r], 0);
      lift[c] = 1;
      out.lifts.push_back(std::move(lift));
    }
  }
  return out;
}

std::vector<int> Cover::proj_basis(int r) const {
  std::vector<int> out;
  for (size_t g = 0; g < generators.elems.size(); ++g)
    if (proj.poset->survives(generators.elems[g], r)) out.push_back(int(g));
  return out;
}

Cover projective_cover(const PosetAlgebraModule& n) {
  const auto& ps = *n.poset;
  Cover cov;
  cov.generators = top(n);
  cov.proj.poset = n.poset;
  cov.proj.p = n.p;
  cov.proj.dims.assign(ps.size(), 0);
  auto gen_elems = std::make_shared<std::vector<int>>(cov.generators.elems);
  for (int r = 0; r < ps.size(); ++r) {
    int d = 0;
    for (int e : *gen_elems)
      if (ps.survives(e, r)) ++d;
    cov.proj.dims[r] = d;
  }
  auto poset = n.poset;
  uint32_t p = n.p;
  cov.proj.mapper = [gen_elems, poset, p](int q, int r) {
    std::vector<int> bq, br;
    for (size_t g = 0; g < gen_elems->size(); ++g) {
      if (poset->survives((*gen_elems)[g], q)) bq.push_back(int(g));
      if (poset->survives((*gen_elems)[g], r)) br.push_back(int(g));
    }
    FpMatrix m(int(br.size()), int(bq.size()), p);
    for (size_t col = 0; col < bq.size(); ++col) {
      int g = bq[col];
      if (!poset->survives((*gen_elems)[g], r)) continue;
      auto row = std::lower_bound(br.begin(), br.end(), g);
      m.set(int(row - br.begin()), int(col), 1);
    }
    return m;
  };
  cov.mats.resize(ps.size());
  for (int r = 0; r < ps.size(); ++r) {
    std::vector<int> basis = cov.proj_basis(r);
    FpMatrix m(n.dims[r], int(basis.size()), n.p);
    for (size_t col = 0; col < basis.size(); ++col) {
      int g = basis[col];
      int e = cov.generators.elems[g];
      const auto& lift = cov.generators.lifts[g];
      FpMatrix v(n.dims[e], 1, n.p);
      for (int i = 0; i < n.dims[e]; ++i) v.set(i, 0, lift[i]);
      FpMatrix img = (e == r) ? v : n.map(e, r) * v;
      for (int i = 0; i < n.dims[r]; ++i) m.set(i, int(col), img.at(i, 0));
    }
    if (m.rank() != n.dims[r])
      throw std::runtime_error("projective_cover: cover map not surjective");
    cov.mats[r] = std::move(m);
  }
  return cov;
}

PosetAlgebraModule syzygy(const PosetAlgebraModule& n, const Cover& cover,
                          std::shared_ptr<std::vector<FpMatrix>>* kernel_bases) {
  const auto& ps = *n.poset;
  PosetAlgebraModule out;
  out.poset = n.poset;
  out.p = n.p;
  out.dims.assign(ps.size(), 0);
  auto bases = std::make_shared<std::vector<FpMatrix>>(ps.size());
  for (int r = 0; r < ps.size(); ++r) {
    (*bases)[r] = cover.mats[r].kernel_basis();
    out.dims[r] = (*bases)[r].cols();
  }
  auto proj = cover.proj;  // value copy shares the generator list
  out.mapper = [bases, proj](int q, int r) {
    auto sol = (*bases)[r].solve(proj.map(q, r) * (*bases)[q]);
    if (!sol) throw std::runtime_error("syzygy: kernel not preserved");
    return std::move(*sol);
  };
  if (kernel_bases) *kernel_bases = bases;
  return out;
}

ResolutionResult minimal_resolution(const PosetAlgebraModule& n, int depth_guard) {
  ResolutionResult res;
  PosetAlgebraModule cur = n;
  // Degree-0 data needed to express the degree-1 lifts in the coordinates of
  // the degree-0 cover.
  std::shared_ptr<std::vector<FpMatrix>> syz_bases;
  std::vector<std::vector<int>> cover_layout;
  for (int k = 0;; ++k) {
    if (cur.is_zero()) {
      res.length = k - 1;
      return res;
    }
    if (k > depth_guard) {
      std::string dump;
      int shown = 0;
      for (int e : cur.active()) {
        if (shown++ == 8) {
          dump += " ...";
          break;
        }
        dump += " " + cur.poset->describe(e) + ":" + std::to_string(cur.dims[e]);
      }
      throw std::runtime_error(
          "resolution: depth guard exceeded at degree " + std::to_string(k) +
          " (internal-consistency failure; syzygy dim " +
          std::to_string(cur.total_dim()) + "; support" + dump + ")");
    }
    Cover cov = projective_cover(cur);
    res.betti.push_back(cov.generators.elems);
    std::shared_ptr<std::vector<FpMatrix>> bases;
    PosetAlgebraModule next = syzygy(cur, cov, &bases);
    res.syzygy_dims.push_back(next.total_dim());
    if (k == 0) {
      res.gens0 = cov.generators.elems;
      syz_bases = bases;
      cover_layout.resize(n.poset->size());
      for (int r = 0; r < n.poset->size(); ++r)
        cover_layout[r] = cov.proj_basis(r);
    } else if (k == 1) {
      res.gens1 = cov.generators.elems;
      res.diff1 = FpMatrix(int(res.gens0.size()), int(res.gens1.size()), n.p);
      for (size_t g = 0; g < cov.generators.elems.size(); ++g) {
        int j = cov.generators.elems[g];
        const auto& lift = cov.generators.lifts[g];  // first-syzygy coordinates
        FpMatrix v(int(lift.size()), 1, n.p);
        for (size_t i = 0; i < lift.size(); ++i) v.set(int(i), 0, lift[i]);
        FpMatrix w = (*syz_bases)[j] * v;  // degree-0 cover coordinates at j
        const auto& rows = cover_layout[j];
        for (size_t i = 0; i < rows.size(); ++i)
          res.diff1.set(rows[i], int(g), w.at(int(i), 0));
      }
    }
    cur = std::move(next);
  }
}

PosetAlgebraModule module_as_algebra_module(ModulePtr m) {
  auto poset = QuotientPoset::from_grid_points(m->grid());
  PosetAlgebraModule n;
  n.poset = poset;
  n.p = m->p();
  n.dims.assign(poset->size(), 0);
  for (int x = 0; x < poset->size(); ++x) n.dims[x] = m->dim(x);
  n.mapper = [m](int a, int b) { return m->structure_map(a, b); };
  return n;
}

PosetAlgebraModule hom_from_hooks(ModulePtr m, QPosetPtr pairs) {
  const auto& grid = *m->grid();
  if (!grid.has_top())
    throw std::invalid_argument("hom_from_hooks: grid must carry a top element");
  PosetAlgebraModule n;
  n.poset = pairs;
  n.p = m->p();
  n.dims.assign(pairs->size(), 0);
  auto bases = std::make_shared<std::vector<FpMatrix>>(pairs->size());
  for (int i = 0; i < pairs->size(); ++i) {
    auto [a, b] = pairs->pair_of(i);
    if (a == b) continue;  // forbidden: zero space
    if (grid.is_top(b))
      (*bases)[i] = FpMatrix::identity(m->dim(a), m->p());
    else
      (*bases)[i] = m->structure_map(a, b).kernel_basis();
    n.dims[i] = (*bases)[i].cols();
  }
  n.mapper = [m, pairs, bases](int i, int j) {
    auto [a, b] = pairs->pair_of(i);
    auto [c, d] = pairs->pair_of(j);
    auto sol = (*bases)[j].solve(m->structure_map(a, c) * (*bases)[i]);
    if (!sol)
      throw std::runtime_error("hom_from_hooks: image escapes the kernel");
    return std::move(*sol);
  };
  return n;
}

PosetAlgebraModule hom_from_hooks(ModulePtr m) {
  return hom_from_hooks(m, QuotientPoset::pairs_poset(m->grid()));
}

PosetAlgebraModule hom_from_upsets(ModulePtr m, QPosetPtr upsets) {
  const auto& grid = *m->grid();
  if (grid.has_top())
    throw std::invalid_argument("hom_from_upsets: grid must not carry a top");
  PosetAlgebraModule n;
  n.poset = upsets;
  n.p = m->p();
  n.dims.assign(upsets->size(), 0);
  auto bases = std::make_shared<std::vector<FpMatrix>>(upsets->size());
  auto offsets = std::make_shared<std::vector<std::vector<int>>>(upsets->size());
  for (int u = 0; u < upsets->size(); ++u) {
    const auto& min = upsets->upset_antichain(u);
    (*offsets)[u].resize(min.size() + 1, 0);
    for (size_t i = 0; i < min.size(); ++i)
      (*offsets)[u][i + 1] = (*offsets)[u][i] + m->dim(min[i]);
    int total = (*offsets)[u].back();
    // Compatibility at pairwise joins.
    int rows = 0;
    for (size_t i = 0; i < min.size(); ++i)
      for (size_t j = i + 1; j < min.size(); ++j)
        rows += m->dim(grid.join(min[i], min[j]));
    FpMatrix constraints(rows, total, m->p());
    int row0 = 0;
    for (size_t i = 0; i < min.size(); ++i)
      for (size_t j = i + 1; j < min.size(); ++j) {
        int jp = grid.join(min[i], min[j]);
        FpMatrix fi = m->structure_map(min[i], jp);
        FpMatrix fj = m->structure_map(min[j], jp);
        for (int r = 0; r < fi.rows(); ++r) {
          for (int c = 0; c < fi.cols(); ++c)
            constraints.set(row0 + r, (*offsets)[u][i] + c, fi.at(r, c));
          for (int c = 0; c < fj.cols(); ++c)
            constraints.set(row0 + r, (*offsets)[u][j] + c,
                            int64_t(m->p()) - int64_t(fj.at(r, c)));
        }
        row0 += fi.rows();
      }
    (*bases)[u] = constraints.kernel_basis();
    n.dims[u] = (*bases)[u].cols();
  }
  n.mapper = [m, upsets, bases, offsets](int u, int v) {
    const auto& grid = *m->grid();
    const auto& min_u = upsets->upset_antichain(u);
    const auto& min_v = upsets->upset_antichain(v);
    // Restriction: the component at v' is the transport from any u' <= v'.
    FpMatrix r((*offsets)[v].back(), (*offsets)[u].back(), m->p());
    for (size_t vi = 0; vi < min_v.size(); ++vi) {
      int src = -1;
      for (size_t ui = 0; ui < min_u.size(); ++ui)
        if (grid.leq(min_u[ui], min_v[vi])) { src = int(ui); break; }
      if (src < 0)
        throw std::runtime_error("hom_from_upsets: containment violated");
      FpMatrix f = m->structure_map(min_u[src], min_v[vi]);
      for (int rr = 0; rr < f.rows(); ++rr)
        for (int cc = 0; cc < f.cols(); ++cc)
          if (f.at(rr, cc))
            r.set((*offsets)[v][vi] + rr, (*offsets)[u][src] + cc, f.at(rr, cc));
    }
    auto sol = (*bases)[v].solve(r * (*bases)[u]);
    if (!sol) throw std::runtime_error("hom_from_upsets: restriction escapes limit");
    return std::move(*sol);
  };
  return n;
}

PosetAlgebraModule hom_from_upsets(ModulePtr m, int guard) {
  return hom_from_upsets(m, QuotientPoset::upset_poset(m->grid(), guard));
}

std::vector<std::vector<int>> usual_betti(ModulePtr m) {
  auto n = module_as_algebra_module(m);
  auto res = minimal_resolution(n, m->grid()->n() + 1);
  return res.betti;
}

UpsetBetti upset_betti(ModulePtr m, int guard, int depth_guard) {
  auto upsets = QuotientPoset::upset_poset(m->grid(), guard);
  auto n = hom_from_upsets(m, upsets);
  int mmax = 0;
  for (int s : m->grid()->shape()) mmax = std::max(mmax, s);
  UpsetBetti out;
  out.poset = upsets;
  out.res = minimal_resolution(n, depth_guard > 0 ? depth_guard : mmax + 2);
  return out;
}

int upset_pdim(ModulePtr m, int guard) { return upset_betti(m, guard).res.length; }

RankExactResolution rank_exact_resolution(ModulePtr m, QPosetPtr pairs,
                                           int depth_guard) {
  RankExactResolution out;
  out.grid = m->grid();
  out.pairs = pairs;
  auto n = hom_from_hooks(m, pairs);
  out.res = minimal_resolution(
      n, depth_guard > 0 ? depth_guard : 2 * m->grid()->n() + 2);
  return out;
}

RankExactResolution rank_exact_resolution(ModulePtr m, int depth_guard) {
  return rank_exact_resolution(m, QuotientPoset::pairs_poset(m->grid()),
                               depth_guard);
}

KoszulComplex koszul_upset_resolution(GridPtr grid, const std::vector<int>& gens,
                                      uint32_t p) {
  if (gens.empty()) throw std::invalid_argument("koszul: need at least one generator");
  int m = int(gens.size());
  if (m > 20) throw std::invalid_argument("koszul: too many generators");
  KoszulComplex kc;
  kc.grid = grid;
  auto join_of = [&](uint32_t mask) {
    int j = -1;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) j = (j < 0) ? gens[i] : grid->join(j, gens[i]);
    return j;
  };
  // Subsets by size, each size in increasing mask order.
  std::vector<std::vector<uint32_t>> by_size(m + 1);
  for (uint32_t mask = 1; mask < (1u << m); ++mask)
    by_size[__builtin_popcount(mask)].push_back(mask);
  kc.terms.resize(m);
  for (int k = 0; k < m; ++k)
    for (uint32_t mask : by_size[k + 1]) kc.terms[k].push_back(join_of(mask));
  kc.diffs.resize(m);
  for (int k = 1; k < m; ++k) {
    const auto& src = by_size[k + 1];
    const auto& dst = by_size[k];
    FpMatrix d(int(dst.size()), int(src.size()), p);
    for (size_t c = 0; c < src.size(); ++c) {
      uint32_t a = src[c];
      int pos = 0;
      for (int i = 0; i < m; ++i) {
        if (!(a & (1u << i))) continue;
        uint32_t b = a & ~(1u << i);
        auto it = std::lower_bound(dst.begin(), dst.end(), b);
        d.set(int(it - dst.begin()), int(c), (pos % 2 == 0) ? 1 : int64_t(p) - 1);
        ++pos;
      }
    }
    kc.diffs[k] = std::move(d);
  }
  int full = join_of((1u << m) - 1);
  kc.minimality_hypothesis = true;
  for (int i = 0; i < m && m > 1; ++i) {
    int sub = join_of(((1u << m) - 1) & ~(1u << i));
    if (sub == full) kc.minimality_hypothesis = false;
  }
  return kc;
}

bool koszul_is_exact(const KoszulComplex& kc) {
  const auto& grid = *kc.grid;
  int m = int(kc.terms.size());
  for (int x = 0; x < grid.num_points(); ++x) {
    // Summands of degree k active at x.
    std::vector<std::vector<int>> active(m);
    for (int k = 0; k < m; ++k)
      for (size_t s = 0; s < kc.terms[k].size(); ++s)
        if (grid.leq(kc.terms[k][s], x)) active[k].push_back(int(s));
    bool in_upset = !active[0].empty();
    std::vector<FpMatrix> d(m);  // pointwise differentials, degree k -> k-1
    for (int k = 1; k < m; ++k) {
      FpMatrix dm(int(active[k - 1].size()), int(active[k].size()),
                  kc.diffs[k].p());
      for (size_t c = 0; c < active[k].size(); ++c)
        for (size_t r = 0; r < active[k - 1].size(); ++r)
          dm.set(int(r), int(c), kc.diffs[k].at(active[k - 1][r], active[k][c]));
      d[k] = std::move(dm);
    }
    // Homology: H_0 must be k on the upset and 0 off it, H_k must vanish.
    for (int k = 0; k < m; ++k) {
      int dim_k = int(active[k].size());
      int rank_in = (k + 1 < m) ? d[k + 1].rank() : 0;
      int rank_out = (k >= 1) ? d[k].rank() : 0;
      int h = dim_k - rank_out - rank_in;
      int expect = (k == 0 && in_upset) ? 1 : 0;
      if (h != expect) return false;
    }
  }
  return true;
}

bool is_rank_exact(const ShortExactSequence& ses) {
  const auto& a = *ses.incl.from;
  const auto& b = *ses.incl.to;
  const auto& c = *ses.proj.to;
  if (ses.proj.from.get() != ses.incl.to.get())
    throw std::invalid_argument("ses: middle modules differ");
  ses.incl.check_naturality();
  ses.proj.check_naturality();
  const auto& grid = *a.grid();
  for (int x = 0; x < grid.num_points(); ++x) {
    if (a.dim(x) + c.dim(x) != b.dim(x))
      throw std::invalid_argument("ses: dimensions not additive");
    if (!(ses.proj.mats[x] * ses.incl.mats[x]).is_zero())
      throw std::invalid_argument("ses: composite not zero");
    if (ses.incl.mats[x].rank() != a.dim(x))
      throw std::invalid_argument("ses: first map not injective");
    if (ses.proj.mats[x].rank() != c.dim(x))
      throw std::invalid_argument("ses: second map not surjective");
  }
  auto ra = rank_invariant(a);
  auto rb = rank_invariant(b);
  auto rc = rank_invariant(c);
  for (auto& [key, v] : rb.table)
    if (ra.table.at(key) + rc.table.at(key) != v) return false;
  return true;
}

namespace {

/// Realizes the first differential of a resolution as a map of interval-
/// decomposable persistence modules and returns the kernel.
ModulePtr realized_differential_kernel(GridPtr grid, uint32_t p,
                                       const std::vector<std::set<int>>& supp0,
                                       const std::vector<std::set<int>>& supp1,
                                       const FpMatrix& diff1) {
  std::vector<ModulePtr> parts0, parts1;
  for (const auto& s : supp0) parts0.push_back(interval_module(grid, s, p));
  for (const auto& s : supp1) parts1.push_back(interval_module(grid, s, p));
  ModuleMorphism h;
  h.from = direct_sum(parts1);
  h.to = direct_sum(parts0);
  h.mats.resize(grid->num_points());
  for (int x = 0; x < grid->num_points(); ++x) {
    // Summand order matches the direct sum layout (each summand has dim <= 1).
    std::vector<int> rows, cols;
    for (size_t i = 0; i < supp0.size(); ++i)
      if (supp0[i].count(x)) rows.push_back(int(i));
    for (size_t g = 0; g < supp1.size(); ++g)
      if (supp1[g].count(x)) cols.push_back(int(g));
    FpMatrix mat(int(rows.size()), int(cols.size()), p);
    for (size_t r = 0; r < rows.size(); ++r)
      for (size_t cidx = 0; cidx < cols.size(); ++cidx)
        mat.set(int(r), int(cidx), diff1.at(rows[r], cols[cidx]));
    h.mats[x] = std::move(mat);
  }
  h.check_naturality();
  return kernel_module(h);
}

std::set<int> hook_support(const GridPoset& grid, int i, int j) {
  std::set<int> s;
  for (int x = 0; x < grid.num_points(); ++x)
    if (grid.leq(i, x) && !grid.leq(j, x)) s.insert(x);
  return s;
}

}  // namespace

WitnessResult rank_gldim_witness(int n, int m, uint32_t p) {
  if (n < 2) throw std::invalid_argument("rank_gldim_witness: need n >= 2");
  if (m < 3) throw std::invalid_argument("rank_gldim_witness: need m >= 3");
  std::vector<std::vector<double>> axes(n);
  for (int k = 0; k < n; ++k)
    for (int v = 0; v < m; ++v) axes[k].push_back(double(v));
  auto grid = build_grid(axes, true);
  auto pairs = QuotientPoset::pairs_poset(grid);
  std::vector<int> zero_idx(n, 0), one_idx(n, 1);
  int zero = grid->id_of(zero_idx), one = grid->id_of(one_idx);
  int elem = pairs->pair_index(zero, one);
  auto simple = simple_at(pairs, elem, p);
  auto res = minimal_resolution(simple, 2 * n + 2);
  if (res.length < 1)
    throw std::runtime_error("rank_gldim_witness: simple came out projective");
  std::vector<std::set<int>> supp0, supp1;
  for (int g : res.gens0) {
    auto [a, b] = pairs->pair_of(g);
    supp0.push_back(hook_support(*grid, a, b));
  }
  for (int g : res.gens1) {
    auto [a, b] = pairs->pair_of(g);
    supp1.push_back(hook_support(*grid, a, b));
  }
  WitnessResult out;
  out.module = realized_differential_kernel(grid, p, supp0, supp1, res.diff1);
  out.achieved_pdim = rank_exact_resolution(out.module, pairs).res.length;
  return out;
}

WitnessResult upset_gldim_witness(int m, uint32_t p) {
  if (m < 3) throw std::invalid_argument("upset_gldim_witness: need m >= 3");
  std::vector<std::vector<double>> axes(2);
  for (int k = 0; k < 2; ++k)
    for (int v = 0; v < m; ++v) axes[k].push_back(double(v));
  auto grid = build_grid(axes, false);
  auto upsets = QuotientPoset::upset_poset(grid);
  // Upset generated by the antidiagonal a + b = m - 1.
  Bits members(grid->num_points());
  for (int x = 0; x < grid->num_points(); ++x) {
    auto idx = grid->index_of(x);
    for (int a = 0; a < m; ++a)
      if (idx[0] >= a && idx[1] >= m - 1 - a) { members.set(x); break; }
  }
  int elem = upsets->upset_index(members);
  if (elem < 0) throw std::runtime_error("upset_gldim_witness: upset not found");
  auto simple = simple_at(upsets, elem, p);
  auto res = minimal_resolution(simple, m + 2);
  if (res.length < 1)
    throw std::runtime_error("upset_gldim_witness: simple came out projective");
  auto upset_support = [&](int u) {
    std::set<int> s;
    for (int x = 0; x < grid->num_points(); ++x)
      if (upsets->upset_members(u).test(x)) s.insert(x);
    return s;
  };
  std::vector<std::set<int>> supp0, supp1;
  for (int g : res.gens0) supp0.push_back(upset_support(g));
  for (int g : res.gens1) supp1.push_back(upset_support(g));
  WitnessResult out;
  out.module = realized_differential_kernel(grid, p, supp0, supp1, res.diff1);
  auto n = hom_from_upsets(out.module, upsets);
  out.achieved_pdim = minimal_resolution(n, m + 2).length;
  return out;
}

}  // namespace sbarc
