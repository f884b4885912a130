#include "lambdacool/csv.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "lambdacool/constants.hpp"
#include "lambdacool/errors.hpp"

namespace lambdacool::sweep {

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string to_hex(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

void write_csv(std::ostream& os, const SweepTable& table, bool with_timestamp) {
    os << "# lambdacool " << version_string << "\n";
    if (with_timestamp) {
        const auto now = std::chrono::system_clock::now();
        const std::time_t t = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        os << "# timestamp = " << buf << "\n";
    }
    for (const auto& [k, v] : table.metadata)
        os << "# " << k << " = " << v << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << (i ? "," : "") << table.columns[i];
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << row[i];
        os << "\n";
    }
}

void write_csv_file(const std::string& path, const SweepTable& table, bool with_timestamp) {
    std::ofstream os(path);
    if (!os)
        throw Error("cannot open output file '" + path + "'");
    write_csv(os, table, with_timestamp);
}

} // namespace lambdacool::sweep
