#pragma once

#include "sbarc/barcode.hpp"

namespace sbarc {

/// Interleaving distance of a single bar to the zero module, closed form:
/// hooks need every side small, rectangles only the smallest side.
double hook_to_zero(const Bar& bar);
double rect_to_zero(const Bar& bar);
double bar_to_zero(const Bar& bar, BarShape shape);

/// Interleaving distance between two bars of equal shape, closed form:
/// either the endpoints are uniformly close, or both bars are near zero.
double hook_distance(const Bar& a, const Bar& b);
double rect_distance(const Bar& a, const Bar& b);
double bar_distance(const Bar& a, const Bar& b, BarShape shape);

struct MatchingResult {
  double epsilon = 0.0;
  struct Pair {
    int left, right;
    double distance;
  };
  std::vector<Pair> pairs;
  struct Unmatched {
    int index;
    double to_zero;
  };
  std::vector<Unmatched> unmatched_left, unmatched_right;
};

/// Maximum-matching feasibility at a fixed threshold: every bar farther than
/// eps from zero must be covered, matched bars must be within eps.
std::optional<MatchingResult> epsilon_matching(const std::vector<Bar>& left,
                                               const std::vector<Bar>& right,
                                               BarShape shape, double eps);

/// Smallest threshold among the finite candidates (pairwise distances and
/// distances to zero) at which a matching exists; infinity when none.
std::pair<double, MatchingResult> bottleneck(const std::vector<Bar>& left,
                                             const std::vector<Bar>& right,
                                             BarShape shape);

/// Provenance of a bar inside a crossed union.
struct TaggedBar {
  Bar bar;
  char side;  // 'A' or 'B'
  char sign;  // '+' or '-'
  int index;  // position in the original part
};

struct SignedMatching {
  double epsilon = 0.0;
  std::vector<TaggedBar> left, right;  // A+ u B-  and  B+ u A-
  MatchingResult matching;
};

/// Bottleneck distance between the crossed unions of two signed barcodes.
SignedMatching signed_bottleneck(const SignedBarcode& a, const SignedBarcode& b);

}  // namespace sbarc
