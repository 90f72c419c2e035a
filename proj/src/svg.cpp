#include "sbarc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sbarc {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string barcode_to_svg(const SignedBarcode& sb) {
  if (sb.n != 2)
    throw std::invalid_argument("svg: only two-parameter barcodes are supported");
  double lo = 0.0, hi = 1.0;
  bool any = false;
  auto eat = [&](const Bar& b) {
    for (double v : {b.i[0], b.i[1], b.j[0], b.j[1]}) {
      if (v == kInf) continue;
      lo = any ? std::min(lo, v) : v;
      hi = any ? std::max(hi, v) : v;
      any = true;
    }
  };
  for (const auto& b : sb.positive) eat(b);
  for (const auto& b : sb.negative) eat(b);
  if (!any) { lo = 0.0; hi = 1.0; }
  if (hi <= lo) hi = lo + 1.0;
  double margin = 0.15 * (hi - lo);
  double clip = hi + margin;          // infinite rays stop here
  double view_lo = lo - 0.05 * (hi - lo);
  double view_hi = clip + 0.05 * (hi - lo);
  const double size = 480.0;
  auto sx = [&](double v) { return (v - view_lo) / (view_hi - view_lo) * size; };
  auto sy = [&](double v) {
    return size - (v - view_lo) / (view_hi - view_lo) * size;
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(size)
     << "\" height=\"" << fmt(size) << "\" viewBox=\"0 0 " << fmt(size) << " "
     << fmt(size) << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Axes through the lower-left corner of the data range.
  os << "  <line x1=\"" << fmt(sx(lo)) << "\" y1=\"" << fmt(sy(lo)) << "\" x2=\""
     << fmt(sx(view_hi)) << "\" y2=\"" << fmt(sy(lo))
     << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  os << "  <line x1=\"" << fmt(sx(lo)) << "\" y1=\"" << fmt(sy(lo)) << "\" x2=\""
     << fmt(sx(lo)) << "\" y2=\"" << fmt(sy(view_hi))
     << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  auto draw = [&](const Bar& b, const char* color) {
    double x1 = b.i[0], y1 = b.i[1];
    double x2 = (b.j[0] == kInf) ? clip : b.j[0];
    double y2 = (b.j[1] == kInf) ? clip : b.j[1];
    os << "  <line x1=\"" << fmt(sx(x1)) << "\" y1=\"" << fmt(sy(y1))
       << "\" x2=\"" << fmt(sx(x2)) << "\" y2=\"" << fmt(sy(y2)) << "\" stroke=\""
       << color << "\" stroke-width=\"2\"";
    if (b.j[0] == kInf || b.j[1] == kInf) os << " stroke-dasharray=\"6 3\"";
    os << "/>\n";
    os << "  <circle cx=\"" << fmt(sx(x1)) << "\" cy=\"" << fmt(sy(y1))
       << "\" r=\"3\" fill=\"" << color << "\"/>\n";
  };
  for (const auto& b : sb.positive) draw(b, "blue");
  for (const auto& b : sb.negative) draw(b, "red");
  os << "</svg>\n";
  return os.str();
}

}  // namespace sbarc
