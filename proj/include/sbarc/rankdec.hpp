#pragma once

#include <set>

#include "sbarc/barcode.hpp"
#include "sbarc/module.hpp"

namespace sbarc {

/// Unique disjoint signed combination of hook rank functions equal to the
/// rank invariant of the module (module given on its compressed grid with
/// top). Solved as a square linear system over a large prime field, lifted
/// to integers and certified by verify_rank_decomposition.
SignedBarcode mrd_hooks(const PersistenceModule& m);

/// Unique disjoint signed combination of right-open rectangle rank
/// functions. Computed on a sentinel-extended grid (one grade per axis
/// beyond the max, module extended by boundary values) so right-open ends
/// at the last grade stay distinguishable from per-axis infinity; recovered
/// by exact alternating differencing of the rank function and certified by
/// verify_rank_decomposition.
SignedBarcode mrd_rectangles(const PersistenceModule& m);

/// A formal direct sum of interval modules, kept as supports. Rank
/// invariants of these are sums of indicator products, which keeps the
/// large instability families cheap.
struct IntervalSumModule {
  GridPtr grid;  // no top
  std::vector<std::set<int>> supports;
  uint32_t p = 2;
};

RankInvariant rank_invariant_of_intervals(
    GridPtr grid, const std::vector<std::set<int>>& supports);

SignedBarcode mrd_rectangles(const IntervalSumModule& m);

/// Right-open rectangle decomposition of a single hook by inclusion-
/// exclusion over the (at most n) maximal rectangles covering its support.
/// At most 2^n - 1 bars.
SignedBarcode mrd_rect_of_hook(const std::vector<double>& i,
                               const std::vector<double>& j);

struct VerifyResult {
  bool ok = true;
  std::pair<int, int> failing_pair{-1, -1};
  long expected = 0, got = 0;
};

/// Evaluates every bar's rank function on every comparable pair of the grid
/// and compares with the given rank invariant exactly.
VerifyResult verify_rank_decomposition(const SignedBarcode& sb,
                                       const RankInvariant& rk);

/// The sentinel-extended grid of a module (one grade per axis beyond the
/// max, no top) together with the boundary-value extension of the module.
struct ExtendedModule {
  GridPtr grid;
  ModulePtr module;
};
ExtendedModule sentinel_extension(const PersistenceModule& m);

}  // namespace sbarc
