#include "sbarc/poset.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace sbarc {

GridPoset::GridPoset(std::vector<std::vector<double>> axis_coords, bool with_top)
    : coords_(std::move(axis_coords)), has_top_(with_top) {
  if (coords_.empty()) throw std::invalid_argument("grid: need at least one axis");
  for (size_t k = 0; k < coords_.size(); ++k) {
    if (coords_[k].empty())
      throw std::invalid_argument("grid: axis " + std::to_string(k) + " is empty");
    for (size_t i = 1; i < coords_[k].size(); ++i)
      if (!(coords_[k][i - 1] < coords_[k][i]))
        throw std::invalid_argument("grid: axis " + std::to_string(k) +
                                    " is not strictly increasing");
    shape_.push_back(int(coords_[k].size()));
  }
  num_points_ = 1;
  for (int s : shape_) {
    if (num_points_ > (1 << 22) / s)
      throw std::invalid_argument("grid: too many points");
    num_points_ *= s;
  }
  strides_.assign(shape_.size(), 1);
  for (int k = int(shape_.size()) - 2; k >= 0; --k)
    strides_[k] = strides_[k + 1] * shape_[k + 1];
  index_.resize(num_points_);
  std::vector<int> idx(shape_.size(), 0);
  for (int id = 0; id < num_points_; ++id) {
    index_[id] = idx;
    for (int k = int(shape_.size()) - 1; k >= 0; --k) {
      if (++idx[k] < shape_[k]) break;
      idx[k] = 0;
    }
  }
}

int GridPoset::id_of(const std::vector<int>& idx) const {
  int id = 0;
  for (size_t k = 0; k < shape_.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= shape_[k]) throw std::out_of_range("grid: index");
    id += idx[k] * strides_[k];
  }
  return id;
}

std::vector<double> GridPoset::grades_of(int id) const {
  if (is_top(id)) throw std::out_of_range("grid: top has no grades");
  const auto& idx = index_[id];
  std::vector<double> g(shape_.size());
  for (size_t k = 0; k < shape_.size(); ++k) g[k] = coords_[k][idx[k]];
  return g;
}

int GridPoset::id_of_grades(const std::vector<double>& grades) const {
  if (grades.size() != shape_.size()) return -1;
  std::vector<int> idx(shape_.size());
  for (size_t k = 0; k < shape_.size(); ++k) {
    auto it = std::lower_bound(coords_[k].begin(), coords_[k].end(), grades[k]);
    if (it == coords_[k].end() || *it != grades[k]) return -1;
    idx[k] = int(it - coords_[k].begin());
  }
  return id_of(idx);
}

bool GridPoset::leq(int a, int b) const {
  if (is_top(b)) return true;
  if (is_top(a)) return false;
  const auto& ia = index_[a];
  const auto& ib = index_[b];
  for (size_t k = 0; k < shape_.size(); ++k)
    if (ia[k] > ib[k]) return false;
  return true;
}

int GridPoset::join(int a, int b) const {
  if (is_top(a) || is_top(b)) return top_id();
  std::vector<int> idx(shape_.size());
  for (size_t k = 0; k < shape_.size(); ++k)
    idx[k] = std::max(index_[a][k], index_[b][k]);
  return id_of(idx);
}

int GridPoset::meet(int a, int b) const {
  if (is_top(a)) return b;
  if (is_top(b)) return a;
  std::vector<int> idx(shape_.size());
  for (size_t k = 0; k < shape_.size(); ++k)
    idx[k] = std::min(index_[a][k], index_[b][k]);
  return id_of(idx);
}

std::vector<int> GridPoset::up_neighbors(int id) const {
  std::vector<int> out;
  if (is_top(id)) return out;
  const auto& idx = index_[id];
  bool maximal_point = true;
  for (size_t k = 0; k < shape_.size(); ++k) {
    if (idx[k] + 1 < shape_[k]) {
      maximal_point = false;
      out.push_back(id + strides_[k]);
    }
  }
  if (maximal_point && has_top_) out.push_back(top_id());
  return out;
}

std::vector<int> GridPoset::min_not_below(int id) const {
  std::vector<int> out;
  if (is_top(id)) return out;
  const auto& idx = index_[id];
  bool any = false;
  for (size_t k = 0; k < shape_.size(); ++k) {
    if (idx[k] + 1 < shape_[k]) {
      any = true;
      std::vector<int> spike(shape_.size(), 0);
      spike[k] = idx[k] + 1;
      out.push_back(id_of(spike));
    }
  }
  if (!any && has_top_) out.push_back(top_id());
  return out;
}

std::vector<int> GridPoset::down_neighbors(int id) const {
  std::vector<int> out;
  if (is_top(id)) {
    std::vector<int> corner(shape_.size());
    for (size_t k = 0; k < shape_.size(); ++k) corner[k] = shape_[k] - 1;
    out.push_back(id_of(corner));
    return out;
  }
  const auto& idx = index_[id];
  for (size_t k = 0; k < shape_.size(); ++k)
    if (idx[k] > 0) out.push_back(id - strides_[k]);
  return out;
}

GridPtr build_grid(std::vector<std::vector<double>> axis_coords, bool with_top) {
  return std::make_shared<GridPoset>(std::move(axis_coords), with_top);
}

uint64_t QuotientPoset::pair_signature() const {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(uint64_t(kind_));
  mix(uint64_t(n_));
  if (grid_) {
    for (int k = 0; k < grid_->n(); ++k)
      for (double c : grid_->axis(k)) {
        uint64_t bits;
        static_assert(sizeof(bits) == sizeof(c));
        std::memcpy(&bits, &c, sizeof(bits));
        mix(bits);
      }
    mix(grid_->has_top() ? 7 : 3);
  }
  return h;
}

void QuotientPoset::finalize() {
  down_.assign(n_, Bits(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (up_[i].test(j)) down_[j].set(i);
  has_forbidden_ = false;
  for (int i = 0; i < n_; ++i)
    if (forbidden_.test(i)) has_forbidden_ = true;
  if (n_ <= 300) check_order_axioms();
}

std::vector<int> QuotientPoset::covers(int i) const {
  std::vector<int> out;
  for (int j = 0; j < n_; ++j) {
    if (i == j || !up_[i].test(j)) continue;
    bool cover = true;
    for (int m = 0; m < n_ && cover; ++m)
      if (m != i && m != j && up_[i].test(m) && up_[m].test(j)) cover = false;
    if (cover) out.push_back(j);
  }
  return out;
}

std::vector<int> QuotientPoset::covers_below_by_scan(int r) const {
  std::vector<int> out;
  for (int q = 0; q < n_; ++q) {
    if (q == r || !up_[q].test(r)) continue;
    bool cover = true;
    for (int m = 0; m < n_ && cover; ++m)
      if (m != q && m != r && up_[q].test(m) && up_[m].test(r)) cover = false;
    if (cover) out.push_back(q);
  }
  return out;
}

std::vector<int> QuotientPoset::covers_below(int r) const {
  switch (kind_) {
    case Kind::GridPoints:
      return grid_->down_neighbors(r);
    case Kind::Pairs: {
      auto [a, b] = pairs_[r];
      std::vector<int> out;
      for (int x : grid_->down_neighbors(a)) out.push_back(pair_index_fast(x, b));
      for (int y : grid_->down_neighbors(b))
        if (grid_->leq(a, y)) out.push_back(pair_index_fast(a, y));
      return out;
    }
    case Kind::Upsets: {
      // Covered elements are the upsets obtained by adjoining one element
      // whose grid covers all lie inside.
      std::vector<int> out;
      const Bits& u = members_[r];
      int np = grid_->num_points();
      for (int x = 0; x < np; ++x) {
        if (u.test(x)) continue;
        bool closed = true;
        for (int y : grid_->up_neighbors(x))
          if (!grid_->is_top(y) && !u.test(y)) closed = false;
        if (!closed) continue;
        Bits v = u;
        v.set(x);
        out.push_back(upset_index(v));
      }
      return out;
    }
  }
  return covers_below_by_scan(r);
}

std::vector<int> QuotientPoset::strictly_below(int j) const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i)
    if (i != j && leq(i, j)) out.push_back(i);
  return out;
}

std::vector<int> QuotientPoset::min_not_below(int i) const {
  std::vector<int> cand;
  for (int a = 0; a < n_; ++a)
    if (!leq(a, i)) cand.push_back(a);
  std::vector<int> out;
  for (int a : cand) {
    bool minimal = true;
    for (int b : cand)
      if (b != a && leq(b, a)) { minimal = false; break; }
    if (minimal) out.push_back(a);
  }
  return out;
}

int QuotientPoset::pair_index(int lo, int hi) const {
  if (kind_ != Kind::Pairs) return -1;
  if (lo < 0 || hi < 0 || lo >= grid_->num_elements() || hi >= grid_->num_elements())
    return -1;
  return pair_lookup_[size_t(lo) * grid_->num_elements() + hi];
}

int QuotientPoset::upset_index(const Bits& members) const {
  for (int i = 0; i < n_; ++i)
    if (members_[i] == members) return i;
  return -1;
}

std::string QuotientPoset::describe(int i) const {
  std::ostringstream os;
  auto point = [this](int id, std::ostringstream& o) {
    if (grid_->is_top(id)) {
      o << "inf";
      return;
    }
    auto g = grid_->grades_of(id);
    o << "(";
    for (size_t k = 0; k < g.size(); ++k) o << (k ? "," : "") << g[k];
    o << ")";
  };
  switch (kind_) {
    case Kind::GridPoints:
      point(i, os);
      break;
    case Kind::Pairs:
      os << "[";
      point(pairs_[i].first, os);
      os << " -> ";
      point(pairs_[i].second, os);
      os << "]";
      break;
    case Kind::Upsets:
      os << "up{";
      for (size_t k = 0; k < antichains_[i].size(); ++k) {
        if (k) os << ", ";
        point(antichains_[i][k], os);
      }
      os << "}";
      break;
  }
  return os.str();
}

void QuotientPoset::check_order_axioms() const {
  if (n_ > 10000) throw std::runtime_error("poset: axiom check guard exceeded");
  for (int i = 0; i < n_; ++i)
    if (!leq(i, i)) throw std::runtime_error("poset: not reflexive");
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (i == j || !leq(i, j)) continue;
      if (leq(j, i)) throw std::runtime_error("poset: not antisymmetric");
      // Transitivity as an up-set containment.
      if (!up_[j].subset_of(up_[i]))
        throw std::runtime_error("poset: not transitive");
    }
}

std::shared_ptr<const QuotientPoset> QuotientPoset::from_grid_points(GridPtr grid) {
  auto qp = std::make_shared<QuotientPoset>();
  qp->kind_ = Kind::GridPoints;
  qp->grid_ = grid;
  qp->n_ = grid->num_points();
  qp->up_.assign(qp->n_, Bits(qp->n_));
  for (int i = 0; i < qp->n_; ++i)
    for (int j = 0; j < qp->n_; ++j)
      if (grid->leq(i, j)) qp->up_[i].set(j);
  qp->forbidden_ = Bits(qp->n_);
  qp->finalize();
  return qp;
}

std::shared_ptr<const QuotientPoset> QuotientPoset::pairs_poset(GridPtr grid) {
  if (!grid->has_top())
    throw std::invalid_argument("pairs_poset: grid must carry a top element");
  auto qp = std::make_shared<QuotientPoset>();
  qp->kind_ = Kind::Pairs;
  qp->grid_ = grid;
  int ne = grid->num_elements();
  qp->pair_lookup_.assign(size_t(ne) * ne, -1);
  for (int a = 0; a < ne; ++a)
    for (int b = 0; b < ne; ++b)
      if (grid->leq(a, b)) {
        qp->pair_lookup_[size_t(a) * ne + b] = int(qp->pairs_.size());
        qp->pairs_.emplace_back(a, b);
      }
  qp->n_ = int(qp->pairs_.size());
  qp->up_.assign(qp->n_, Bits(qp->n_));
  qp->forbidden_ = Bits(qp->n_);
  for (int i = 0; i < qp->n_; ++i) {
    auto [a, b] = qp->pairs_[i];
    if (a == b) qp->forbidden_.set(i);
    for (int j = 0; j < qp->n_; ++j) {
      auto [c, d] = qp->pairs_[j];
      if (grid->leq(a, c) && grid->leq(b, d)) qp->up_[i].set(j);
    }
  }
  qp->finalize();
  return qp;
}

std::shared_ptr<const QuotientPoset> QuotientPoset::upset_poset(GridPtr grid,
                                                                int guard) {
  if (grid->has_top())
    throw std::invalid_argument("upset_poset: grid must not carry a top element");
  int np = grid->num_points();
  // Enumerate all non-empty upsets by repeatedly deleting minimal elements,
  // starting from the whole grid.
  std::vector<Bits> ups;
  std::map<std::vector<uint8_t>, int> seen;
  auto key_of = [np](const Bits& b) {
    std::vector<uint8_t> key((np + 7) / 8, 0);
    for (int i = 0; i < np; ++i)
      if (b.test(i)) key[i >> 3] |= uint8_t(1) << (i & 7);
    return key;
  };
  Bits whole(np);
  for (int i = 0; i < np; ++i) whole.set(i);
  std::queue<int> work;
  ups.push_back(whole);
  seen[key_of(whole)] = 0;
  work.push(0);
  while (!work.empty()) {
    int cur = work.front();
    work.pop();
    Bits u = ups[cur];
    for (int x = 0; x < np; ++x) {
      if (!u.test(x)) continue;
      bool minimal = true;
      for (int y = 0; y < np && minimal; ++y)
        if (y != x && u.test(y) && grid->leq(y, x)) minimal = false;
      if (!minimal) continue;
      Bits v = u;
      v.reset(x);
      bool empty = true;
      for (int i = 0; i < np && empty; ++i)
        if (v.test(i)) empty = false;
      if (empty) continue;
      auto key = key_of(v);
      auto [it, inserted] = seen.emplace(key, int(ups.size()));
      if (inserted) {
        ups.push_back(v);
        if (int(ups.size()) > guard)
          throw std::invalid_argument("upset_poset: upset count guard exceeded");
        work.push(it->second);
      }
    }
  }

  auto qp = std::make_shared<QuotientPoset>();
  qp->kind_ = Kind::Upsets;
  qp->grid_ = grid;
  qp->n_ = int(ups.size());
  qp->members_ = std::move(ups);
  qp->antichains_.resize(qp->n_);
  for (int i = 0; i < qp->n_; ++i) {
    for (int x = 0; x < np; ++x) {
      if (!qp->members_[i].test(x)) continue;
      bool minimal = true;
      for (int y = 0; y < np && minimal; ++y)
        if (y != x && qp->members_[i].test(y) && grid->leq(y, x)) minimal = false;
      if (minimal) qp->antichains_[i].push_back(x);
    }
  }
  // Opposite of inclusion: U <= V iff V is contained in U.
  qp->up_.assign(qp->n_, Bits(qp->n_));
  for (int i = 0; i < qp->n_; ++i)
    for (int j = 0; j < qp->n_; ++j) {
      bool contains = true;
      for (int x = 0; x < np && contains; ++x)
        if (qp->members_[j].test(x) && !qp->members_[i].test(x)) contains = false;
      if (contains) qp->up_[i].set(j);
    }
  qp->forbidden_ = Bits(qp->n_);
  qp->finalize();
  return qp;
}

bool pairs_survives_by_scan(const GridPoset& grid, std::pair<int, int> from,
                            std::pair<int, int> to) {
  auto [a, b] = from;
  auto [c, d] = to;
  if (!(grid.leq(a, c) && grid.leq(b, d))) return false;
  for (int x = 0; x < grid.num_elements(); ++x)
    if (grid.leq(a, x) && grid.leq(b, x) && grid.leq(x, c) && grid.leq(x, d))
      return false;
  return true;
}

bool pairs_survives_reduced(const GridPoset& grid, std::pair<int, int> from,
                            std::pair<int, int> to) {
  auto [a, b] = from;
  auto [c, d] = to;
  if (!(grid.leq(a, c) && grid.leq(b, d))) return false;
  return !grid.leq(b, c);
}

int count_upsets(const GridPoset& grid, int cap) {
  try {
    auto qp = QuotientPoset::upset_poset(
        std::make_shared<GridPoset>(grid), cap);
    return qp->size();
  } catch (const std::invalid_argument&) {
    return cap + 1;
  }
}

}  // namespace sbarc
