#ifndef LAMBDACOOL_CSV_HPP
#define LAMBDACOOL_CSV_HPP

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace lambdacool::sweep {

// Result table: '#'-prefixed metadata block (sorted key = value lines),
// header row, then data rows. Cells are preformatted so output is
// byte-deterministic; the optional timestamp line is the only volatile part.
struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::map<std::string, std::string> metadata;
};

std::string format_double(double v);

void write_csv(std::ostream& os, const SweepTable& table, bool with_timestamp = true);
void write_csv_file(const std::string& path, const SweepTable& table, bool with_timestamp = true);

std::uint64_t fnv1a64(std::string_view data);
std::string to_hex(std::uint64_t value);

} // namespace lambdacool::sweep

#endif
