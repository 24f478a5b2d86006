#pragma once

// CSV and manifest output with deterministic formatting: the same config and
// seed produce byte-identical files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace tqmkit {

using json = nlohmann::json;

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
  public:
    CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(const std::vector<double>& row) {
        if (row.size() != header_.size())
            throw std::invalid_argument("CsvWriter: row width does not match header");
        rows_.push_back(row);
    }

    std::string to_string() const {
        std::ostringstream out;
        for (size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
        out << "\n";
        for (const auto& r : rows_) {
            for (size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_number(r[i]);
            out << "\n";
        }
        return out.str();
    }

    void write(const std::filesystem::path& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("CsvWriter: cannot open " + path.string());
        f << to_string();
        if (!f) throw std::runtime_error("CsvWriter: write failed for " + path.string());
    }

    /// Rows as a JSON array of objects keyed by the header.
    json to_json() const {
        json arr = json::array();
        for (const auto& r : rows_) {
            json obj;
            for (size_t i = 0; i < header_.size(); ++i) obj[header_[i]] = r[i];
            arr.push_back(obj);
        }
        return arr;
    }

    const std::vector<std::string>& header() const { return header_; }

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<double>> rows_;
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_text: cannot open " + path.string());
    f << text;
    if (!f) throw std::runtime_error("write_text: write failed for " + path.string());
}

}  // namespace tqmkit
