#ifndef QGAUGE_CSV_HPP
#define QGAUGE_CSV_HPP

#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qgauge {

/// Shortest round-trippable decimal form of a double ('.' decimal point,
/// locale independent).
std::string format_double(double v);

/// Header-row CSV with full double precision; every row newline terminated.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    void header(std::span<const std::string> names);
    void row(std::span<const double> values);
    void close();

private:
    std::ofstream out_;
    std::string path_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

/// FNV-1a 64-bit content hash for provenance stamps.
std::uint64_t fnv1a64(std::string_view data);

} // namespace qgauge

#endif
