#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace bpgeo::io {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string csv_quote(const std::string& s) {
    bool need = s.find_first_of(",\"\n\r") != std::string::npos;
    if (!need) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// RFC-4180-style writer: CRLF-free rows, quoted on demand, deterministic
// number formatting
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : os_(path) {
        if (!os_) throw std::runtime_error("CsvWriter: cannot open " + path);
    }

    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) os_ << ',';
            os_ << csv_quote(cells[i]);
        }
        os_ << '\n';
    }

  private:
    std::ofstream os_;
};

}  // namespace bpgeo::io
