#include "manet/csv.hpp"

#include <charconv>
#include <ostream>
#include <system_error>

#include "manet/version.hpp"

namespace manet {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_csv_preamble(std::ostream& os, std::uint64_t seed, const std::string& header) {
  os << "# seed=" << seed << " version=" << kVersion << "\n" << header << "\n";
}

}  // namespace manet
