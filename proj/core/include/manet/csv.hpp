#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace manet {

// Shortest round-trip decimal form; deterministic across runs.
std::string format_double(double v);

// `# seed=<seed> version=<version>` followed by the header row.
void write_csv_preamble(std::ostream& os, std::uint64_t seed, const std::string& header);

}  // namespace manet
