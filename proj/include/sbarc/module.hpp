#pragma once

#include <map>
#include <mutex>
#include <set>

#include "sbarc/fp.hpp"
#include "sbarc/poset.hpp"
#include "sbarc/presentation.hpp"

namespace sbarc {

/// A pointwise finite dimensional representation of a GridPoset over F_p,
/// stored as dimensions and unit-step matrices along each axis. The value at
/// the top element, when present, is zero. Immutable after construction
/// apart from an internal synchronized cache of composed structure maps.
class PersistenceModule {
public:
  PersistenceModule(GridPtr grid, uint32_t p);

  const GridPtr& grid() const { return grid_; }
  uint32_t p() const { return p_; }
  int dim(int point) const { return grid_->is_top(point) ? 0 : dims_[point]; }
  const std::vector<int>& dims() const { return dims_; }

  void set_dim(int point, int d) { dims_[point] = d; }
  void set_step(int point, int axis, FpMatrix m);
  const FpMatrix& step(int point, int axis) const;

  /// Composite of unit steps along the axis-ordered staircase from a to b.
  /// Well defined for any monotone path by commutativity.
  FpMatrix structure_map(int a, int b) const;

  /// Checks the commuting-square condition exactly; throws on failure.
  void check_commutativity() const;

  int total_dim() const;

private:
  GridPtr grid_;
  uint32_t p_;
  std::vector<int> dims_;
  std::vector<std::vector<FpMatrix>> steps_;  // [point][axis]
  mutable std::map<std::pair<int, int>, FpMatrix> cache_;
  mutable std::mutex cache_mutex_;
};

using ModulePtr = std::shared_ptr<const PersistenceModule>;

/// Ranks of all structure maps between comparable grid points (top excluded).
struct RankInvariant {
  GridPtr grid;
  std::map<std::pair<int, int>, int> table;
  int at(int a, int b) const;
  RankInvariant& operator+=(const RankInvariant& other);
};

RankInvariant rank_invariant(const PersistenceModule& m);

/// Cokernel realization of a presentation on a grid containing its grades.
ModulePtr realize(const Presentation& pres, GridPtr grid);

/// Interval module supported on the given set of finite grid points.
/// The support must be convex and connected in the grid order.
ModulePtr interval_module(GridPtr grid, const std::set<int>& support, uint32_t p);

/// Hook with corner i and bound j (j may be the grid top):
/// support {k : i <= k, j not<= k}.
ModulePtr hook_module(GridPtr grid, int i, int j, uint32_t p);

/// Rectangle [i, j] inside the grid: support {k : i <= k <= j}.
ModulePtr rectangle_module(GridPtr grid, int i, int j, uint32_t p);

ModulePtr direct_sum(const std::vector<ModulePtr>& parts);

/// M shifted down by the given per-axis index steps: the value at index x is
/// the value of M at x + steps, zero where x + steps leaves the grid.
/// Pad axes beforehand when the support must be preserved.
ModulePtr shift_on_grid(const PersistenceModule& m, const std::vector<int>& steps);

/// Same module on a grid extended by extra grades per axis (values at new
/// points given by the colimit over the old points below, i.e. boundary
/// values).
ModulePtr extend_to_grid(const PersistenceModule& m, GridPtr bigger);

/// A morphism of persistence modules on a shared grid, stored pointwise.
struct ModuleMorphism {
  ModulePtr from, to;
  std::vector<FpMatrix> mats;  // per finite point: dim from -> dim to
  void check_naturality() const;
};

/// Pointwise kernel of a morphism, with induced step maps.
ModulePtr kernel_module(const ModuleMorphism& h);

}  // namespace sbarc
