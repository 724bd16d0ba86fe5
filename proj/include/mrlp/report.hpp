#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mrlp/sweep.hpp"

namespace mrlp {

/// RatioRecord CSV. Runtime is left out so the file is byte-stable; see
/// write_timings_csv.
void write_ratio_csv(std::ostream& out, const std::vector<RatioRecord>& records);
void write_timings_csv(std::ostream& out, const std::vector<RatioRecord>& records);
/// Reads back a file produced by write_ratio_csv (runtime is zero).
std::vector<RatioRecord> read_ratio_csv(std::istream& in);

void write_summary(std::ostream& out, const SweepSummary& summary);

/// Standalone SVG: square-function ratio against p, one polyline per
/// function, grouped per filter assignment.
void write_ratio_svg(std::ostream& out, const std::vector<RatioRecord>& records);

/// Minimal RFC-4180 reader (quoted fields, doubled quotes, CRLF or LF).
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

}  // namespace mrlp
