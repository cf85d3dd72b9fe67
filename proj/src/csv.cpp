#include "coherence/csv.hpp"

#include <cstdio>

#include "coherence/hermitian.hpp"

namespace coherence {

std::string format_real(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path) {
    if (!out_) throw CoherenceError(ErrorCode::ParseError, "cannot write " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
}

CsvWriter& CsvWriter::cell(std::string_view v) {
    if (row_started_) out_ << ',';
    out_ << v;
    row_started_ = true;
    return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(std::string_view(format_real(v))); }

CsvWriter& CsvWriter::cell(bool v) { return cell(std::string_view(v ? "true" : "false")); }

void CsvWriter::end_row() {
    out_ << '\n';
    row_started_ = false;
}

}  // namespace coherence
