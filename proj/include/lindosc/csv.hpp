#pragma once

// Deterministic CSV output: 17 significant digits, scientific notation,
// comma separator, LF line endings. Identical inputs produce identical bytes.

#include <fstream>
#include <string>
#include <vector>

namespace lindosc {

/// %.16e rendering (17 significant digits); round-trips any double.
std::string format_sci(double value);

/// %.6g rendering for human-readable reports.
std::string format_short(double value);

class CsvWriter {
public:
    /// Throws std::runtime_error on open failure.
    explicit CsvWriter(const std::string& path);

    /// Lines prefixed with "# "; must precede the header row.
    void comment(const std::string& text);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    void numeric_row(const std::vector<double>& values);

private:
    std::ofstream out_;
    std::string path_;
};

}  // namespace lindosc
