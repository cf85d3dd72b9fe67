#include "coherence/matrix_io.hpp"

#include <fstream>

namespace coherence {

namespace {

void read_plane(const nlohmann::json& rows, Eigen::Index dim, ComplexMatrix& out, bool imaginary) {
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) {
        throw CoherenceError(ErrorCode::NotSquare, "matrix rows do not match dim");
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
            throw CoherenceError(ErrorCode::NotSquare, "matrix row " + std::to_string(i) + " has wrong length");
        }
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double v = row[static_cast<std::size_t>(j)].get<double>();
            if (imaginary) {
                out(i, j).imag(v);
            } else {
                out(i, j).real(v);
            }
        }
    }
}

}  // namespace

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    try {
        const auto dim = j.at("dim").get<Eigen::Index>();
        if (dim < 1) throw CoherenceError(ErrorCode::NotSquare, "dim must be positive");
        ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
        read_plane(j.at("re"), dim, m, false);
        if (j.contains("im")) read_plane(j.at("im"), dim, m, true);
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw CoherenceError(ErrorCode::ParseError, e.what());
    }
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json r = nlohmann::json::array();
        nlohmann::json c = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            r.push_back(m(i, j).real());
            c.push_back(m(i, j).imag());
        }
        re.push_back(std::move(r));
        im.push_back(std::move(c));
    }
    return {{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CoherenceError(ErrorCode::ParseError, "cannot open " + path.string());
    try {
        return matrix_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw CoherenceError(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw CoherenceError(ErrorCode::ParseError, "cannot write " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace coherence
