#pragma once

#include <concepts>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace coherence {

// %.12g, the float format of every CSV the harness writes.
std::string format_real(double v);

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    CsvWriter& cell(double v);
    CsvWriter& cell(std::string_view v);
    CsvWriter& cell(bool v);
    template <std::integral T>
    CsvWriter& cell(T v) {
        return cell(std::string_view(std::to_string(v)));
    }
    void end_row();

private:
    std::ofstream out_;
    bool row_started_ = false;
};

}  // namespace coherence
