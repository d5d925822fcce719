#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fusionlab/fusion_ring.hpp"

namespace fusionlab {

/// Loads a ring from a catalog spec (`cyclic:n`, `int`, `free:k`, `tl:δ`,
/// `su2:k`, `fibonacci`, `ising`, `product:<spec>,<spec>`), from a path to a
/// `.fusion` file, or from inline file content starting with '{'.
///
/// Throws InputError for unknown names, malformed files, δ < 2 and
/// non-integer fusion coefficients.
FusionRing load_ring(std::string_view source, ArithmeticMode mode = ArithmeticMode::exact);

/// Parses the JSON-compatible finite ring format.
FusionRing parse_ring_file(std::string_view content, ArithmeticMode mode = ArithmeticMode::exact);

/// Serializes a finite ring back into the file format.
std::string write_ring_file(const FusionRing& ring);

struct CatalogEntry {
  std::string syntax;
  std::string description;
};

std::vector<CatalogEntry> catalog_entries();

}  // namespace fusionlab
