#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qwalk {

/// Rectangular result table rendered as CSV: `#`-prefixed provenance comments,
/// then a header row, then data rows. Comma field separator, `.` decimal
/// separator, `\n` line endings.
struct ResultTable {
    std::vector<std::string> comments;  // emitted as "# <comment>"
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> footer_comments;  // summary block after the data
};

/// 17 significant digits, so re-parsing reproduces the double exactly.
std::string format_double(double v);
std::string format_int(int64_t v);

std::string render_csv(const ResultTable& table);

/// Write-temp-then-rename; the temp file is removed if anything fails, so no
/// partial output is left behind.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace qwalk
