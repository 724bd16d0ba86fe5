#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "mrlp/grid_function.hpp"

namespace mrlp {

// HWGF1 layout (little-endian):
//   "HWGF1" | u32 d | i32 depth | d x i64 origin | d x i64 shape |
//   (f64 re, f64 im) x prod(shape), row-major
void write_grid_function(std::ostream& out, const GridFunction& f);
GridFunction read_grid_function(std::istream& in);
void save_grid_function(const std::string& path, const GridFunction& f);
GridFunction load_grid_function(const std::string& path);

/// CSV for 1-D (x,re,im) and 2-D (x1,x2,re,im) inspection.
void write_grid_csv(std::ostream& out, const GridFunction& f);

/// 64-bit FNV-1a, used for table and file checksums.
std::uint64_t fnv1a64(std::span<const unsigned char> bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

/// RFC-4180 field quoting.
std::string csv_field(const std::string& s);
/// Shortest round-trip-safe decimal for a double ("%.17g").
std::string format_double(double v);

}  // namespace mrlp
