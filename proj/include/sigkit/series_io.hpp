#ifndef SIGKIT_SERIES_IO_HPP
#define SIGKIT_SERIES_IO_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigkit/path.hpp"

// JSON-lines dataset records and the CSV conventions shared by the CLI:
// one JSON object per line, CSV numbers with 6 significant digits, '.'
// decimal separator, LF line endings.

namespace sigkit {

struct SeriesRecord {
    std::string id;
    std::optional<std::string> label;
    std::optional<double> target;
    std::vector<double> times;
    std::vector<std::vector<double>> values;  // one row per time stamp

    Path to_path() const;
    static SeriesRecord from_path(std::string id, const Path& p);
};

// Thrown on malformed records; line is 1-based within the input.
struct RecordError : std::runtime_error {
    RecordError(std::size_t line, const std::string& what);
    std::size_t line;
};

std::vector<SeriesRecord> read_jsonl(std::istream& in, const std::string& name);
std::vector<SeriesRecord> read_jsonl_file(const std::string& path);
void write_jsonl(std::ostream& out, const std::vector<SeriesRecord>& records);

// 6 significant digits, shortest form ("%.6g")
std::string csv_number(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const CsvTable& table);
void write_csv_file(const std::string& path, const CsvTable& table);

} // namespace sigkit

#endif
