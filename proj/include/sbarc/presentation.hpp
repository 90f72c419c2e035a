#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbarc/poset.hpp"

namespace sbarc {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what),
        line(line_) {}
};

/// A finite presentation of a persistence module: generators at real grades
/// and relations, each a grade plus a sparse column of coefficients over the
/// generators. Every relation grade dominates the grades of the generators
/// it touches.
struct Presentation {
  int n = 0;
  uint32_t p = 2;
  std::vector<std::vector<double>> generators;
  struct Relation {
    std::vector<double> grade;
    std::vector<std::pair<int, uint32_t>> column;  // (generator, coefficient)
  };
  std::vector<Relation> relations;

  void validate() const;
};

/// Parses the `rkdec-presentation v1` text format:
///
///   rkdec-presentation v1
///   n=<int> p=<prime>
///   generators <g>
///   <g lines: n whitespace-separated decimal reals>
///   relations <r>
///   <r lines: n reals ';' then pairs "<col>:<coeff>">
///
/// Lines starting with '#' are ignored. Unknown versions are rejected.
Presentation parse_presentation(const std::string& text);

std::string write_presentation(const Presentation& pres);

/// The product lattice spanned by the coordinates of all generator and
/// relation grades, with a top element adjoined.
GridPtr compress_grades(const Presentation& pres);

}  // namespace sbarc
