// Deterministic text formatting for CSV/JSON output.
//
// std::to_chars produces the shortest round-trip decimal form and, unlike
// iostreams, is locale-independent, so identical inputs give byte-identical
// files on every platform.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace levydim {

std::string format_double(double x);
std::string format_u64(std::uint64_t x);

// Writes one CSV row, comma-separated, '\n'-terminated.  Fields are written
// verbatim; callers must not pass fields containing commas or newlines.
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

} // namespace levydim
