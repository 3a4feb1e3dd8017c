#pragma once

#include "pgnlab/minima.hpp"

#include <string>
#include <vector>

namespace pgn {

// Joint diagram against log10 Q: psi_j of Primal tables as solid polylines,
// -nu*_j of LinearForm tables dashed and coloured like psi_{n+2-j}, so that
// Mahler duality shows as near-coincidence. Rows with errors are skipped.
// Throws InsufficientData when no table has a plottable row.
std::string profile_svg(const std::vector<ProfileTable>& tables, int width = 800, int height = 500);

} // namespace pgn
