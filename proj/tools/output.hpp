#ifndef TONGUE_CLI_OUTPUT_HPP
#define TONGUE_CLI_OUTPUT_HPP

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace cli {

// 17 significant digits: doubles round-trip exactly and output is byte stable.
inline std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != header_.size())
            throw std::logic_error("csv row width mismatch");
        rows_.push_back(cells);
    }

    std::string str() const {
        std::ostringstream out;
        join(out, header_);
        for (const auto& r : rows_) join(out, r);
        return out.str();
    }

private:
    static void join(std::ostringstream& out, const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    }
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

inline void write_output(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << payload;
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace cli

#endif
