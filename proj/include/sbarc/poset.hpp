#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace sbarc {

/// Fixed-size bitset used for poset up-sets and membership tests.
class Bits {
public:
  Bits() = default;
  explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}
  void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  int size() const { return n_; }
  bool intersects(const Bits& o) const {
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }
  bool intersects3(const Bits& a, const Bits& b) const {
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & a.w_[k] & b.w_[k]) return true;
    return false;
  }
  bool subset_of(const Bits& o) const {
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  bool operator==(const Bits&) const = default;

private:
  int n_ = 0;
  std::vector<uint64_t> w_;
};

/// Finite product of chains [m1] x ... x [mn], each axis carrying strictly
/// increasing real grades, with an optional adjoined top element.
/// Points are interned: ids 0 .. num_points()-1 in row-major order, and
/// top_id() == num_points() when the top is present. Immutable once built.
class GridPoset {
public:
  GridPoset(std::vector<std::vector<double>> axis_coords, bool with_top);

  int n() const { return int(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  bool has_top() const { return has_top_; }
  int num_points() const { return num_points_; }
  int num_elements() const { return num_points_ + (has_top_ ? 1 : 0); }
  int top_id() const { return has_top_ ? num_points_ : -1; }
  bool is_top(int id) const { return has_top_ && id == num_points_; }

  const std::vector<double>& axis(int k) const { return coords_[k]; }

  int id_of(const std::vector<int>& idx) const;
  const std::vector<int>& index_of(int id) const { return index_[id]; }
  std::vector<double> grades_of(int id) const;  // finite points only

  /// Grid point whose grades equal the given vector; -1 when off-grid.
  int id_of_grades(const std::vector<double>& grades) const;

  bool leq(int a, int b) const;
  int join(int a, int b) const;
  int meet(int a, int b) const;  // requires a or b finite, or both top

  /// Covers of id (one step up per axis; the top covers the maximal corner).
  std::vector<int> up_neighbors(int id) const;
  /// Elements covered by id (one step down per axis; the top covers the
  /// maximal corner).
  std::vector<int> down_neighbors(int id) const;

  /// The antichain of minimal elements not below id.
  std::vector<int> min_not_below(int id) const;

private:
  std::vector<int> shape_;
  std::vector<std::vector<double>> coords_;
  bool has_top_;
  int num_points_;
  std::vector<int> strides_;
  std::vector<std::vector<int>> index_;
};

using GridPtr = std::shared_ptr<const GridPoset>;

GridPtr build_grid(std::vector<std::vector<double>> axis_coords, bool with_top);

/// A finite poset together with a set Q of forbidden elements.
/// An ordered pair i <= j "survives" when no x in Q satisfies i <= x <= j;
/// in particular survives(i,i) fails exactly on Q. Used as the index poset
/// of modules over the quotient incidence algebra kP/Q (Q may be empty).
class QuotientPoset {
public:
  enum class Kind { GridPoints, Pairs, Upsets };

  int size() const { return n_; }
  Kind kind() const { return kind_; }
  uint64_t pair_signature() const;

  bool leq(int i, int j) const { return up_[i].test(j); }
  bool forbidden(int i) const { return forbidden_.test(i); }
  /// No x in Q with i <= x <= j. For the pairs poset this reduces to
  /// "hi(i) not below lo(j)"; the generic bitset scan is the definition.
  bool survives(int i, int j) const {
    if (!leq(i, j)) return false;
    if (!has_forbidden_) return true;
    if (kind_ == Kind::Pairs)
      return !grid_->leq(pairs_[i].second, pairs_[j].first);
    return !forbidden_.intersects3(up_[i], down_[j]);
  }
  bool survives_by_definition(int i, int j) const {
    return leq(i, j) && !forbidden_.intersects3(up_[i], down_[j]);
  }

  /// Covers of i in the full poset (computed on demand).
  std::vector<int> covers(int i) const;
  /// Elements covered by r in the full poset. Fast closed forms per kind;
  /// the generic scan is the fallback and the cross-check.
  std::vector<int> covers_below(int r) const;
  std::vector<int> covers_below_by_scan(int r) const;
  std::vector<int> strictly_below(int j) const;

  /// Antichain of minimal elements not below i.
  std::vector<int> min_not_below(int i) const;
  /// Elements directly above i in the Hasse diagram.
  std::vector<int> up_neighbors(int i) const { return covers(i); }

  // Payloads mapping elements back to their origin.
  // Pairs poset: (lo, hi) grid ids over the grid with top.
  std::pair<int, int> pair_of(int i) const { return pairs_[i]; }
  int pair_index(int lo, int hi) const;
  int pair_index_fast(int lo, int hi) const {
    return pair_lookup_[size_t(lo) * grid_->num_elements() + hi];
  }
  // Upset poset: minimal-antichain and membership over the grid.
  const std::vector<int>& upset_antichain(int i) const { return antichains_[i]; }
  const Bits& upset_members(int i) const { return members_[i]; }
  int upset_index(const Bits& members) const;
  // Grid-point poset: the underlying grid id is the element id itself.

  const GridPtr& grid() const { return grid_; }

  std::string describe(int i) const;

  /// Checks reflexivity, antisymmetry and transitivity exhaustively.
  /// Runs automatically at construction for posets of up to 300 elements;
  /// larger posets (guarded at 10^4) can be checked explicitly.
  void check_order_axioms() const;

  static std::shared_ptr<const QuotientPoset> from_grid_points(GridPtr grid);
  static std::shared_ptr<const QuotientPoset> pairs_poset(GridPtr grid);
  static std::shared_ptr<const QuotientPoset> upset_poset(GridPtr grid,
                                                          int guard = 10000);

private:
  void finalize();

  Kind kind_ = Kind::GridPoints;
  int n_ = 0;
  GridPtr grid_;
  std::vector<Bits> up_, down_;
  Bits forbidden_;
  bool has_forbidden_ = false;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> pair_lookup_;
  std::vector<std::vector<int>> antichains_;
  std::vector<Bits> members_;
};

using QPosetPtr = std::shared_ptr<const QuotientPoset>;

/// Raw-definition survival test for the pairs poset: scans all x in the
/// grid-with-top for (a,b) <= (x,x) <= (c,d). The construction itself uses
/// the bitset form; this is the independent cross-check.
bool pairs_survives_by_scan(const GridPoset& grid, std::pair<int, int> from,
                            std::pair<int, int> to);

/// Reduced survival test for the pairs poset: survives iff hi(from) is not
/// below lo(to).
bool pairs_survives_reduced(const GridPoset& grid, std::pair<int, int> from,
                            std::pair<int, int> to);

/// Number of non-empty upsets of the grid (enumeration with a cap).
int count_upsets(const GridPoset& grid, int cap);

}  // namespace sbarc
