#include "sigkit/series_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sigkit {

using nlohmann::json;

Path SeriesRecord::to_path() const {
    if (values.size() != times.size())
        throw std::invalid_argument("record values row count must equal times length");
    const std::size_t d = values.empty() ? 0 : values.front().size();
    if (d == 0) throw std::invalid_argument("record needs at least one channel");
    std::vector<double> flat;
    flat.reserve(times.size() * d);
    for (const auto& row : values) {
        if (row.size() != d)
            throw std::invalid_argument("record values must be rectangular");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return Path(times, std::move(flat), static_cast<int>(d));
}

SeriesRecord SeriesRecord::from_path(std::string id, const Path& p) {
    SeriesRecord rec;
    rec.id = std::move(id);
    rec.times = p.times();
    rec.values.reserve(p.samples());
    for (std::size_t i = 0; i < p.samples(); ++i) {
        auto r = p.row(i);
        rec.values.emplace_back(r.begin(), r.end());
    }
    return rec;
}

RecordError::RecordError(std::size_t line_no, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
      line(line_no) {}

std::vector<SeriesRecord> read_jsonl(std::istream& in, const std::string& name) {
    std::vector<SeriesRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw RecordError(line_no, name + ": invalid JSON: " + e.what());
        }
        try {
            SeriesRecord rec;
            rec.id = obj.contains("id") ? obj.at("id").get<std::string>()
                                        : "row" + std::to_string(line_no);
            if (obj.contains("label")) rec.label = obj.at("label").get<std::string>();
            if (obj.contains("target")) rec.target = obj.at("target").get<double>();
            rec.times = obj.at("times").get<std::vector<double>>();
            rec.values = obj.at("values").get<std::vector<std::vector<double>>>();
            rec.to_path();  // validates shape and monotone times
            records.push_back(std::move(rec));
        } catch (const RecordError&) {
            throw;
        } catch (const std::exception& e) {
            throw RecordError(line_no, name + ": " + e.what());
        }
    }
    return records;
}

std::vector<SeriesRecord> read_jsonl_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    return read_jsonl(in, path);
}

void write_jsonl(std::ostream& out, const std::vector<SeriesRecord>& records) {
    for (const auto& rec : records) {
        json obj;
        obj["id"] = rec.id;
        if (rec.label) obj["label"] = *rec.label;
        if (rec.target) obj["target"] = *rec.target;
        obj["times"] = rec.times;
        obj["values"] = rec.values;
        out << obj.dump() << '\n';
    }
}

std::string csv_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_csv(std::ostream& out, const CsvTable& table) {
    auto emit_row = [&out](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    };
    if (!table.header.empty()) emit_row(table.header);
    for (const auto& row : table.rows) emit_row(row);
}

void write_csv_file(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);  // keep LF endings everywhere
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_csv(out, table);
}

} // namespace sigkit
