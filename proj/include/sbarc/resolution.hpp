#pragma once

#include <functional>

#include "sbarc/module.hpp"
#include "sbarc/poset.hpp"

namespace sbarc {

/// A finite dimensional module over the quotient incidence algebra of a
/// QuotientPoset: a space per non-forbidden element plus a matrix for every
/// surviving ordered pair. Maps compose functorially where surviving and
/// compose to zero across killed pairs. Matrices are produced on demand by
/// the mapper closure (each is consumed once per resolution step).
struct PosetAlgebraModule {
  QPosetPtr poset;
  uint32_t p = 2;
  std::vector<int> dims;
  std::function<FpMatrix(int, int)> mapper;  // surviving q < r, both dims > 0

  FpMatrix map(int q, int r) const;
  int total_dim() const;
  bool is_zero() const;
  std::vector<int> active() const;  // elements with dims > 0
  void check_functoriality() const;
};

PosetAlgebraModule simple_at(QPosetPtr poset, int elem, uint32_t p);
PosetAlgebraModule projective_at(QPosetPtr poset, int elem, uint32_t p);

/// Radical quotient: elements with multiplicities, plus lift vectors.
struct Top {
  std::vector<int> elems;                    // one entry per generator
  std::vector<std::vector<uint32_t>> lifts;  // lift in N_{elem} coordinates
  bool empty() const { return elems.empty(); }
};
Top top(const PosetAlgebraModule& n);

struct Cover {
  Top generators;
  PosetAlgebraModule proj;     // direct sum of projectives P_elem
  std::vector<FpMatrix> mats;  // per element r: dim N_r x dim P_r
  // Basis of (proj)_r: generators g with survives(elem_g, r), increasing g.
  std::vector<int> proj_basis(int r) const;
};
Cover projective_cover(const PosetAlgebraModule& n);

/// Pointwise kernel of the cover map, with induced maps. kernel_bases
/// receives the kernel columns inside the cover's coordinates.
PosetAlgebraModule syzygy(const PosetAlgebraModule& n, const Cover& cover,
                          std::shared_ptr<std::vector<FpMatrix>>* kernel_bases =
                              nullptr);

struct ResolutionResult {
  std::vector<std::vector<int>> betti;  // degree -> element ids, flattened
  std::vector<int> syzygy_dims;         // total dim of each successive syzygy
  int length = -1;                      // -1 for the zero module
  // First differential (filled when length >= 1): lift coordinates of the
  // degree-1 generators over the degree-0 projective summands.
  std::vector<int> gens0, gens1;
  FpMatrix diff1;  // rows = gens0, cols = gens1
};

/// Iterated minimal projective covers until the syzygy vanishes. Exceeding
/// the depth guard reports an internal-consistency failure.
ResolutionResult minimal_resolution(const PosetAlgebraModule& n, int depth_guard);

/// --- Frontends -----------------------------------------------------------

/// The module itself, viewed over the poset of grid points (usual setting).
PosetAlgebraModule module_as_algebra_module(ModulePtr m);

/// Hom from the sum of all hooks: the module over the pairs poset modulo the
/// diagonal whose value at (a,b) is ker(M(a) -> M(b)), and M(a) at (a, top).
PosetAlgebraModule hom_from_hooks(ModulePtr m, QPosetPtr pairs);
PosetAlgebraModule hom_from_hooks(ModulePtr m);

/// Hom from the sum of all upset modules: the value at an upset U is the
/// limit of M over U, computed from the minimal antichain of U.
PosetAlgebraModule hom_from_upsets(ModulePtr m, QPosetPtr upsets);
PosetAlgebraModule hom_from_upsets(ModulePtr m, int guard);

/// Usual multigraded Betti numbers: grid point ids per homological degree.
std::vector<std::vector<int>> usual_betti(ModulePtr m);

struct UpsetBetti {
  QPosetPtr poset;
  ResolutionResult res;
};
UpsetBetti upset_betti(ModulePtr m, int guard = 10000, int depth_guard = -1);
int upset_pdim(ModulePtr m, int guard = 10000);

struct RankExactResolution {
  GridPtr grid;  // with top
  QPosetPtr pairs;
  ResolutionResult res;  // betti elements are pairs-poset ids
};
RankExactResolution rank_exact_resolution(ModulePtr m, int depth_guard = -1);
RankExactResolution rank_exact_resolution(ModulePtr m, QPosetPtr pairs,
                                           int depth_guard = -1);

/// --- Koszul-type resolution of an upset module over the grid poset -------

struct KoszulComplex {
  GridPtr grid;
  std::vector<std::vector<int>> terms;  // degree k: points join(f(A)), |A|=k+1
  std::vector<FpMatrix> diffs;          // scalar matrices terms[k] -> terms[k-1]
  bool minimality_hypothesis = false;
  int length() const { return int(terms.size()) - 1; }
};

KoszulComplex koszul_upset_resolution(GridPtr grid, const std::vector<int>& gens,
                                      uint32_t p);

/// Pointwise check that the complex is exact onto the interval module
/// supported on the upset generated by the generators.
bool koszul_is_exact(const KoszulComplex& kc);

/// --- Short exact sequences and the rank additivity test ------------------

struct ShortExactSequence {
  ModuleMorphism incl;  // A -> B
  ModuleMorphism proj;  // B -> C
};

/// Throws when the input is not a pointwise short exact sequence of natural
/// maps; returns whether rank additivity holds at every comparable pair.
bool is_rank_exact(const ShortExactSequence& ses);

/// --- Global dimension witnesses ------------------------------------------

struct WitnessResult {
  ModulePtr module;
  int achieved_pdim;
};

/// Kernel of the realized first differential of the minimal resolution of
/// the simple at the pair (0,...,0) -> (1,...,1); its relative projective
/// dimension over the rank exact structure attains 2n-2.
WitnessResult rank_gldim_witness(int n, int m, uint32_t p);

/// Same construction over the upset poset of [m]^2, starting from the upset
/// generated by the antidiagonal; attains m-2.
WitnessResult upset_gldim_witness(int m, uint32_t p);

}  // namespace sbarc
