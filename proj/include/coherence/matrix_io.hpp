#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "coherence/hermitian.hpp"

namespace coherence {

// {"dim": d, "re": [[...]], "im": [[...]]}, row-major. "im" may be omitted
// for real matrices.
ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const ComplexMatrix& m);

ComplexMatrix read_matrix_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace coherence
