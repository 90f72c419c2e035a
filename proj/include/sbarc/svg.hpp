#pragma once

#include <string>

#include "sbarc/barcode.hpp"

namespace sbarc {

/// Two-parameter signed barcodes drawn as line segments from i to j,
/// positive bars blue, negative bars red, infinite ends clipped at a margin.
/// Layout is deterministic. Rejects n != 2.
std::string barcode_to_svg(const SignedBarcode& sb);

}  // namespace sbarc
