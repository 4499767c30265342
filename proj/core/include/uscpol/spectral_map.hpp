#pragma once

#include <iosfwd>
#include <string>

#include "uscpol/classical.hpp"

namespace uscpol {

// CSV: header row "k/omega,<omega...>", then one row per k with cells "re+imi".
void write_map_csv(std::ostream& out, const SpectralMap& map);
SpectralMap read_map_csv(std::istream& in);

// Binary: "USCPOLv1", uint32 n_k, uint32 n_omega (little endian), k grid,
// omega grid, then interleaved re/im float64 row-major.
void write_map_binary(std::ostream& out, const SpectralMap& map);
SpectralMap read_map_binary(std::istream& in);

// Throws ConfigError when the grids are empty, unsorted or inconsistent.
void validate_map(const SpectralMap& map);

// |T| per cell, row-major.
std::vector<double> magnitude(const SpectralMap& map);

}  // namespace uscpol
