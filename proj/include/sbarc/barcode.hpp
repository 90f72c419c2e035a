#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "sbarc/module.hpp"
#include "sbarc/resolution.hpp"

namespace sbarc {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class BarShape { Hook, Rectangle };

/// A signed bar: birth corner i and bound j in real coordinates. Infinite
/// coordinates of j encode the grid top (all-infinite for hooks) or
/// per-axis right-openness to infinity (rectangles).
struct Bar {
  std::vector<double> i, j;
  bool j_is_top() const {
    for (double v : j)
      if (v != kInf) return false;
    return true;
  }
  bool operator==(const Bar&) const = default;
  bool operator<(const Bar& o) const {
    if (i != o.i) return i < o.i;
    return j < o.j;
  }
};

struct SignedBarcode {
  int n = 0;
  uint32_t p = 2;
  BarShape shape = BarShape::Hook;
  std::vector<Bar> positive, negative;
  /// degree -> indices into the concatenation positive ++ negative.
  std::map<int, std::vector<int>> degrees;

  int size() const { return int(positive.size() + negative.size()); }
  bool multiset_equal(const SignedBarcode& other) const;
};

/// Bars of the rank-exact resolution, even degrees positive, odd negative.
SignedBarcode to_signed_barcode(const RankExactResolution& rk);

/// Cancels bars present in both parts, with multiplicity.
SignedBarcode cancel_common(const SignedBarcode& sb);

/// Value of the bar's rank function at a comparable pair of grade vectors.
int bar_rank(const Bar& bar, BarShape shape, const std::vector<double>& a,
             const std::vector<double>& b);

/// Signed sum of bar rank functions at a pair.
long signed_rank_sum(const SignedBarcode& sb, const std::vector<double>& a,
                     const std::vector<double>& b);

std::string barcode_to_json(const SignedBarcode& sb);
SignedBarcode barcode_from_json(const std::string& text);

}  // namespace sbarc
