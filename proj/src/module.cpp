#include "sbarc/module.hpp"

#include <algorithm>
#include <queue>

namespace sbarc {

PersistenceModule::PersistenceModule(GridPtr grid, uint32_t p)
    : grid_(std::move(grid)), p_(p), dims_(grid_->num_points(), 0) {
  steps_.resize(grid_->num_points());
  for (auto& s : steps_) s.resize(grid_->n());
}

void PersistenceModule::set_step(int point, int axis, FpMatrix m) {
  steps_[point][axis] = std::move(m);
}

const FpMatrix& PersistenceModule::step(int point, int axis) const {
  return steps_[point][axis];
}

FpMatrix PersistenceModule::structure_map(int a, int b) const {
  if (!grid_->leq(a, b) || grid_->is_top(b))
    throw std::invalid_argument("structure_map: need a <= b with b finite");
  if (a == b) return FpMatrix::identity(dims_[a], p_);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find({a, b});
    if (it != cache_.end()) return it->second;
  }
  auto ia = grid_->index_of(a);
  auto ib = grid_->index_of(b);
  FpMatrix acc = FpMatrix::identity(dims_[a], p_);
  std::vector<int> cur = ia;
  int cur_id = a;
  for (int k = 0; k < grid_->n(); ++k) {
    while (cur[k] < ib[k]) {
      acc = steps_[cur_id][k] * acc;
      ++cur[k];
      cur_id = grid_->id_of(cur);
    }
  }
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    cache_.emplace(std::make_pair(a, b), acc);
  }
  return acc;
}

void PersistenceModule::check_commutativity() const {
  for (int x = 0; x < grid_->num_points(); ++x) {
    auto idx = grid_->index_of(x);
    for (int k = 0; k < grid_->n(); ++k) {
      if (idx[k] + 1 >= grid_->shape()[k]) continue;
      for (int l = k + 1; l < grid_->n(); ++l) {
        if (idx[l] + 1 >= grid_->shape()[l]) continue;
        auto xk = idx; ++xk[k];
        auto xl = idx; ++xl[l];
        FpMatrix a = steps_[grid_->id_of(xk)][l] * steps_[x][k];
        FpMatrix b = steps_[grid_->id_of(xl)][k] * steps_[x][l];
        if (!(a == b)) throw std::runtime_error("module: steps do not commute");
      }
    }
  }
}

int PersistenceModule::total_dim() const {
  int t = 0;
  for (int d : dims_) t += d;
  return t;
}

int RankInvariant::at(int a, int b) const {
  auto it = table.find({a, b});
  if (it == table.end()) throw std::out_of_range("rank invariant: pair not present");
  return it->second;
}

RankInvariant& RankInvariant::operator+=(const RankInvariant& other) {
  for (auto& [key, v] : other.table) table[key] += v;
  return *this;
}

RankInvariant rank_invariant(const PersistenceModule& m) {
  const auto& grid = *m.grid();
  RankInvariant out;
  out.grid = m.grid();
  for (int a = 0; a < grid.num_points(); ++a) {
    // Forward sweep from a: maps composed in id order (targets only grow).
    std::map<int, FpMatrix> to;
    to.emplace(a, FpMatrix::identity(m.dim(a), m.p()));
    out.table[{a, a}] = m.dim(a);
    for (int b = a; b < grid.num_points(); ++b) {
      auto it = to.find(b);
      if (it == to.end()) continue;
      if (b != a) out.table[{a, b}] = it->second.rank();
      for (int k = 0; k < grid.n(); ++k) {
        auto idx = grid.index_of(b);
        if (idx[k] + 1 >= grid.shape()[k]) continue;
        ++idx[k];
        int nb = grid.id_of(idx);
        if (!to.count(nb)) to.emplace(nb, m.step(b, k) * it->second);
      }
      to.erase(it);
    }
  }
  return out;
}

ModulePtr realize(const Presentation& pres, GridPtr grid) {
  pres.validate();
  const int np = grid->num_points();
  std::vector<int> gen_point(pres.generators.size());
  for (size_t g = 0; g < pres.generators.size(); ++g) {
    gen_point[g] = grid->id_of_grades(pres.generators[g]);
    if (gen_point[g] < 0) throw std::invalid_argument("realize: generator grade off-grid");
  }
  std::vector<int> rel_point(pres.relations.size());
  for (size_t r = 0; r < pres.relations.size(); ++r) {
    rel_point[r] = grid->id_of_grades(pres.relations[r].grade);
    if (rel_point[r] < 0) throw std::invalid_argument("realize: relation grade off-grid");
  }

  auto mod = std::make_shared<PersistenceModule>(grid, pres.p);
  // Per point: generators/relations with grade <= point, quotient data.
  std::vector<std::vector<int>> gens_at(np);
  std::vector<QuotientBasis> qb(np);
  for (int x = 0; x < np; ++x) {
    std::vector<int> gens, rels;
    for (size_t g = 0; g < pres.generators.size(); ++g)
      if (grid->leq(gen_point[g], x)) gens.push_back(int(g));
    for (size_t r = 0; r < pres.relations.size(); ++r)
      if (grid->leq(rel_point[r], x)) rels.push_back(int(r));
    std::vector<int> pos(pres.generators.size(), -1);
    for (size_t i = 0; i < gens.size(); ++i) pos[gens[i]] = int(i);
    FpMatrix cols(int(gens.size()), int(rels.size()), pres.p);
    for (size_t j = 0; j < rels.size(); ++j)
      for (auto& [col, coeff] : pres.relations[rels[j]].column)
        if (pos[col] >= 0) cols.set(pos[col], int(j), coeff);
    gens_at[x] = std::move(gens);
    qb[x] = quotient_basis(int(gens_at[x].size()), cols);
    mod->set_dim(x, int(qb[x].complement.size()));
  }
  for (int x = 0; x < np; ++x) {
    auto idx = grid->index_of(x);
    for (int k = 0; k < grid->n(); ++k) {
      if (idx[k] + 1 >= grid->shape()[k]) continue;
      auto up = idx; ++up[k];
      int y = grid->id_of(up);
      // Section of M(x) into the free space at y, then project.
      FpMatrix section(int(gens_at[y].size()), mod->dim(x), pres.p);
      std::vector<int> pos_y(pres.generators.size(), -1);
      for (size_t i = 0; i < gens_at[y].size(); ++i) pos_y[gens_at[y][i]] = int(i);
      for (int j = 0; j < mod->dim(x); ++j) {
        int gen = gens_at[x][qb[x].complement[j]];
        section.set(pos_y[gen], j, 1);
      }
      mod->set_step(x, k, qb[y].projection * section);
    }
  }
  return mod;
}

namespace {

void require_interval(const GridPoset& grid, const std::set<int>& support) {
  if (support.empty()) return;
  for (int s : support)
    if (s < 0 || s >= grid.num_points())
      throw std::invalid_argument("interval: support point off-grid");
  // Convexity.
  for (int a : support)
    for (int b : support) {
      if (!grid.leq(a, b)) continue;
      for (int c = 0; c < grid.num_points(); ++c)
        if (grid.leq(a, c) && grid.leq(c, b) && !support.count(c))
          throw std::invalid_argument("interval: support is not convex");
    }
  // Connectivity through comparable pairs.
  std::vector<int> elems(support.begin(), support.end());
  std::vector<int> comp(elems.size(), -1);
  std::queue<int> work;
  comp[0] = 0;
  work.push(0);
  while (!work.empty()) {
    int i = work.front();
    work.pop();
    for (size_t j = 0; j < elems.size(); ++j) {
      if (comp[j] >= 0) continue;
      if (grid.leq(elems[i], elems[j]) || grid.leq(elems[j], elems[i])) {
        comp[j] = 0;
        work.push(int(j));
      }
    }
  }
  for (int c : comp)
    if (c < 0) throw std::invalid_argument("interval: support is not connected");
}

}  // namespace

ModulePtr interval_module(GridPtr grid, const std::set<int>& support, uint32_t p) {
  require_interval(*grid, support);
  auto mod = std::make_shared<PersistenceModule>(grid, p);
  for (int s : support) mod->set_dim(s, 1);
  for (int x = 0; x < grid->num_points(); ++x) {
    auto idx = grid->index_of(x);
    for (int k = 0; k < grid->n(); ++k) {
      if (idx[k] + 1 >= grid->shape()[k]) continue;
      auto up = idx; ++up[k];
      int y = grid->id_of(up);
      FpMatrix m(mod->dim(y), mod->dim(x), p);
      if (support.count(x) && support.count(y)) m.set(0, 0, 1);
      mod->set_step(x, k, std::move(m));
    }
  }
  return mod;
}

ModulePtr hook_module(GridPtr grid, int i, int j, uint32_t p) {
  if (!(grid->leq(i, j) && i != j))
    throw std::invalid_argument("hook: need i < j");
  std::set<int> support;
  for (int x = 0; x < grid->num_points(); ++x)
    if (grid->leq(i, x) && !grid->leq(j, x)) support.insert(x);
  return interval_module(grid, support, p);
}

ModulePtr rectangle_module(GridPtr grid, int i, int j, uint32_t p) {
  if (!grid->leq(i, j)) throw std::invalid_argument("rectangle: need i <= j");
  std::set<int> support;
  for (int x = 0; x < grid->num_points(); ++x)
    if (grid->leq(i, x) && grid->leq(x, j)) support.insert(x);
  return interval_module(grid, support, p);
}

ModulePtr direct_sum(const std::vector<ModulePtr>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum: empty list");
  auto grid = parts[0]->grid();
  uint32_t p = parts[0]->p();
  for (const auto& m : parts)
    if (m->grid().get() != grid.get() || m->p() != p)
      throw std::invalid_argument("direct_sum: grid or characteristic mismatch");
  auto mod = std::make_shared<PersistenceModule>(grid, p);
  for (int x = 0; x < grid->num_points(); ++x) {
    int d = 0;
    for (const auto& m : parts) d += m->dim(x);
    mod->set_dim(x, d);
  }
  for (int x = 0; x < grid->num_points(); ++x) {
    auto idx = grid->index_of(x);
    for (int k = 0; k < grid->n(); ++k) {
      if (idx[k] + 1 >= grid->shape()[k]) continue;
      auto up = idx; ++up[k];
      int y = grid->id_of(up);
      FpMatrix blk(mod->dim(y), mod->dim(x), p);
      int ro = 0, co = 0;
      for (const auto& m : parts) {
        const FpMatrix& s = m->step(x, k);
        for (int r = 0; r < s.rows(); ++r)
          for (int c = 0; c < s.cols(); ++c)
            if (s.at(r, c)) blk.set(ro + r, co + c, s.at(r, c));
        ro += m->dim(y);
        co += m->dim(x);
      }
      mod->set_step(x, k, std::move(blk));
    }
  }
  return mod;
}

ModulePtr shift_on_grid(const PersistenceModule& m, const std::vector<int>& steps) {
  auto grid = m.grid();
  if (int(steps.size()) != grid->n())
    throw std::invalid_argument("shift: steps arity mismatch");
  auto shifted_id = [&](int x) -> int {
    auto idx = grid->index_of(x);
    for (int k = 0; k < grid->n(); ++k) {
      idx[k] += steps[k];
      if (idx[k] < 0 || idx[k] >= grid->shape()[k]) return -1;
    }
    return grid->id_of(idx);
  };
  auto mod = std::make_shared<PersistenceModule>(grid, m.p());
  for (int x = 0; x < grid->num_points(); ++x) {
    int s = shifted_id(x);
    mod->set_dim(x, s >= 0 ? m.dim(s) : 0);
  }
  for (int x = 0; x < grid->num_points(); ++x) {
    auto idx = grid->index_of(x);
    for (int k = 0; k < grid->n(); ++k) {
      if (idx[k] + 1 >= grid->shape()[k]) continue;
      auto up = idx; ++up[k];
      int y = grid->id_of(up);
      int sx = shifted_id(x), sy = shifted_id(y);
      if (sx >= 0 && sy >= 0) {
        mod->set_step(x, k, m.step(sx, k));
      } else {
        mod->set_step(x, k, FpMatrix(mod->dim(y), mod->dim(x), m.p()));
      }
    }
  }
  return mod;
}

ModulePtr extend_to_grid(const PersistenceModule& m, GridPtr bigger) {
  auto old_grid = m.grid();
  // Map each new point to the join of old points below it (clamping).
  std::vector<int> clamp(bigger->num_points(), -1);
  for (int x = 0; x < bigger->num_points(); ++x) {
    std::vector<int> idx(bigger->n());
    auto bx = bigger->index_of(x);
    for (int k = 0; k < bigger->n(); ++k) {
      double grade = bigger->axis(k)[bx[k]];
      const auto& axis = old_grid->axis(k);
      int best = -1;
      for (size_t i = 0; i < axis.size(); ++i)
        if (axis[i] <= grade) best = int(i);
      if (best < 0) { clamp[x] = -1; goto next_point; }
      idx[k] = best;
    }
    clamp[x] = old_grid->id_of(idx);
  next_point:;
  }
  {
    auto mod = std::make_shared<PersistenceModule>(bigger, m.p());
    for (int x = 0; x < bigger->num_points(); ++x)
      mod->set_dim(x, clamp[x] >= 0 ? m.dim(clamp[x]) : 0);
    for (int x = 0; x < bigger->num_points(); ++x) {
      auto idx = bigger->index_of(x);
      for (int k = 0; k < bigger->n(); ++k) {
        if (idx[k] + 1 >= bigger->shape()[k]) continue;
        auto up = idx; ++up[k];
        int y = bigger->id_of(up);
        if (clamp[x] >= 0 && clamp[y] >= 0)
          mod->set_step(x, k, m.structure_map(clamp[x], clamp[y]));
        else
          mod->set_step(x, k, FpMatrix(mod->dim(y), mod->dim(x), m.p()));
      }
    }
    return mod;
  }
}

void ModuleMorphism::check_naturality() const {
  auto grid = from->grid();
  for (int x = 0; x < grid->num_points(); ++x) {
    auto idx = grid->index_of(x);
    for (int k = 0; k < grid->n(); ++k) {
      if (idx[k] + 1 >= grid->shape()[k]) continue;
      auto up = idx; ++up[k];
      int y = grid->id_of(up);
      FpMatrix lhs = to->step(x, k) * mats[x];
      FpMatrix rhs = mats[y] * from->step(x, k);
      if (!(lhs == rhs)) throw std::runtime_error("morphism: squares do not commute");
    }
  }
}

ModulePtr kernel_module(const ModuleMorphism& h) {
  auto grid = h.from->grid();
  uint32_t p = h.from->p();
  std::vector<FpMatrix> bases(grid->num_points());
  auto mod = std::make_shared<PersistenceModule>(grid, p);
  for (int x = 0; x < grid->num_points(); ++x) {
    bases[x] = h.mats[x].kernel_basis();
    mod->set_dim(x, bases[x].cols());
  }
  for (int x = 0; x < grid->num_points(); ++x) {
    auto idx = grid->index_of(x);
    for (int k = 0; k < grid->n(); ++k) {
      if (idx[k] + 1 >= grid->shape()[k]) continue;
      auto up = idx; ++up[k];
      int y = grid->id_of(up);
      auto sol = bases[y].solve(h.from->step(x, k) * bases[x]);
      if (!sol) throw std::runtime_error("kernel: step does not restrict");
      mod->set_step(x, k, std::move(*sol));
    }
  }
  return mod;
}

}  // namespace sbarc
