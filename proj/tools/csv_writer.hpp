// CSV emission with '#' metadata headers and 17-significant-digit doubles,
// so identical runs produce byte-identical files that round-trip exactly.

#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "wqed/types.hpp"

namespace wqed::cli {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& experiment,
              const std::string& config_json, const std::string& columns,
              const char* version_string)
        : out_(path, std::ios::binary) {
        if (!out_) throw ConfigError("cannot open output file " + path);
        out_ << "# wqed " << version_string << "\n";
        out_ << "# experiment: " << experiment << "\n";
        out_ << "# config: " << config_json << "\n";
        out_ << "# columns: " << columns << "\n";
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    void comment(const std::string& text) { out_ << "# " << text << "\n"; }

    void close() { out_.close(); }

private:
    std::ofstream out_;
};

}  // namespace wqed::cli
