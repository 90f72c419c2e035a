#pragma once

#include <map>
#include <string>

#include "sbarc/metric.hpp"
#include "sbarc/rankdec.hpp"
#include "sbarc/resolution.hpp"
#include "sbarc/rng.hpp"

namespace sbarc {

/// --- Named modules used across the experiment suites ---------------------

/// The L-shaped interval example: one generator at the origin, relations at
/// (0,2), (1,1), (2,0).
Presentation figure1_presentation(uint32_t p = 2);

/// The stability example pair: a 5x5 right-open square and its notched
/// variant with relations at (0,5), (4,4), (5,0).
Presentation example52_m_presentation(uint32_t p = 2);
Presentation example52_n_presentation(uint32_t p = 2);

/// Right-open staircase with generators g_i = (i-1, k-i) and open upper
/// corners c_i = (k+i, 2k+1-i).
Presentation staircase_presentation(int k, uint32_t p = 2);

/// Upset staircase (generators only, consecutive-join gluing relations).
Presentation staircase_upset_presentation(int k, uint32_t p = 2);

/// The instability pair A, B: direct sums of union-of-rectangles modules and
/// small squares whose corner grades drift by eps = 1/(k+1). Kept as formal
/// interval sums; only minimal rank decompositions by rectangles are needed.
struct InstabilityPair {
  IntervalSumModule a, b;
  double eps;
};
InstabilityPair instability_pair(int k, uint32_t p = 2);

/// Random finitely presented module: grades uniform on an integer grid.
Presentation random_presentation(Rng& rng, int n, int grid_size, int gens,
                                 int rels, uint32_t p);

/// Restriction of a module to a sub-product-grid of its coordinates.
ModulePtr restrict_to_grid(const PersistenceModule& m, GridPtr subgrid);

/// Rank-exact signed barcode of a presentation, computed on the grid spanned
/// by its minimal presentation grades (degree-0 and degree-1 Betti grades).
SignedBarcode rank_exact_on_minimized_grid(const Presentation& pres);

SignedBarcode rank_exact_barcode(const Presentation& pres);

/// --- Experiment reports ---------------------------------------------------

struct ExperimentReport {
  std::string id;
  bool passed = false;
  std::string json;  // deterministic for fixed (id, seed, parameters)
};

/// experiment in {figure1, example52, instability, staircase, gldim-rank,
/// gldim-upset, stability-sweep}. Missing parameters take the documented
/// defaults.
ExperimentReport run_experiment(const std::string& experiment, uint64_t seed,
                                uint32_t p, int max_depth,
                                const std::map<std::string, long>& params = {});

}  // namespace sbarc
