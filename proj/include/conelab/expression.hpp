#pragma once

#include "conelab/lattice.hpp"

#include <map>
#include <string>
#include <string_view>

namespace conelab {

using SymbolTable = std::map<std::string, DivisorClass>;

/// Parses a rational linear combination of symbols, e.g. "2F1+E1-E2",
/// "1/2Gamma-1/2B2" or "-2K+Gamma". Coefficients may carry an optional '*'.
/// Unknown symbols and malformed text throw invalid_argument.
DivisorClass parse_class_expression(std::string_view text, const SymbolTable& symbols, std::size_t rank);

/// Renders c against the named basis, e.g. "E1+2G2-1/2F1"; "0" for zero.
std::string format_class(const DivisorClass& c, const std::vector<std::string>& names);

}  // namespace conelab
