#include "coherence/measures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

namespace coherence {

double EntropyConfig::log(double x) const {
    return log_base == LogBase::Two ? std::log2(x) : std::log(x);
}

void EntropyConfig::check() const {
    if (!(support_epsilon >= 0.0)) {
        throw CoherenceError(ErrorCode::OutOfRange, "support_epsilon must be >= 0");
    }
    if (!(regularization_eta >= 0.0 && regularization_eta < 1.0)) {
        throw CoherenceError(ErrorCode::OutOfRange, "regularization_eta must lie in [0, 1)");
    }
}

std::string MeasureId::name() const {
    switch (kind) {
        case MeasureKind::RelEnt: return "C_r";
        case MeasureKind::L1: return "C_l1";
        case MeasureKind::Cross: return "C_cross";
        case MeasureKind::RelPartial: return "C_r_partial(" + std::to_string(k) + ")";
        case MeasureKind::CrossPartial: return "C_cross_partial(" + std::to_string(k) + ")";
        case MeasureKind::C2: return "C_2";
    }
    return "unknown";
}

MeasureId MeasureId::parse(std::string_view text) {
    std::string s;
    for (char c : text) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (!s.empty() && s.back() == ')') {
        if (const auto open = s.find('('); open != std::string::npos) {
            s[open] = ':';
            s.pop_back();
        }
    }
    std::size_t k = 0;
    if (const auto colon = s.find(':'); colon != std::string::npos) {
        try {
            k = std::stoul(s.substr(colon + 1));
        } catch (const std::exception&) {
            throw CoherenceError(ErrorCode::ParseError, "bad partial order in '" + std::string(text) + "'");
        }
        s = s.substr(0, colon);
    }
    if (s == "c_r" || s == "cr") return {MeasureKind::RelEnt, 0};
    if (s == "c_l1" || s == "l1") return {MeasureKind::L1, 0};
    if (s == "c_cross" || s == "cross") return {MeasureKind::Cross, 0};
    if (s == "c_2" || s == "c2") return {MeasureKind::C2, 0};
    if ((s == "c_r_partial" || s == "c_cross_partial") && k == 0) {
        throw CoherenceError(ErrorCode::ParseError, "partial measures need ':k' with k >= 1");
    }
    if (s == "c_r_partial") return {MeasureKind::RelPartial, k};
    if (s == "c_cross_partial") return {MeasureKind::CrossPartial, k};
    throw CoherenceError(ErrorCode::ParseError, "unknown measure '" + std::string(text) + "'");
}

double shannon_entropy(std::span<const double> p, const EntropyConfig& cfg) {
    double total = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < -1e-10) {
            throw CoherenceError(ErrorCode::NotNormalized, "negative or non-finite probability");
        }
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-8) {
        throw CoherenceError(ErrorCode::NotNormalized, "probabilities sum to " + std::to_string(total));
    }
    double h = 0.0;
    for (double v : p) {
        if (v > cfg.support_epsilon) h -= v * cfg.log(v);
    }
    return std::max(h, 0.0);
}

double von_neumann_entropy(const DensityMatrix& rho, const EntropyConfig& cfg) {
    const EigenDecomposition e = eigh(rho);
    return shannon_entropy(e.spectrum.values(), cfg);
}

double tsallis2(const Spectrum& lambda) {
    double purity = 0.0;
    for (double v : lambda.values()) purity += v * v;
    return 1.0 - purity;
}

double tsallis2(const DensityMatrix& rho) {
    return 1.0 - rho.matrix().squaredNorm();
}

double c_rel_ent(const DensityMatrix& rho, const EntropyConfig& cfg) {
    const RealVector diag = rho.diagonal();
    return shannon_entropy(diag, cfg) - von_neumann_entropy(rho, cfg);
}

double c_l1(const DensityMatrix& rho) {
    const ComplexMatrix& m = rho.matrix();
    double s = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j) s += std::abs(m(i, j));
        }
    }
    return s;
}

namespace {

double partial_entropy(RealVector v, std::size_t k, const EntropyConfig& cfg) {
    std::stable_sort(v.begin(), v.end(), std::greater<>());
    double h = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        if (v[i] > cfg.support_epsilon) h -= v[i] * cfg.log(v[i]);
    }
    return h;
}

ComplexMatrix regularized(const DensityMatrix& rho, double eta) {
    if (eta <= 0.0) return rho.matrix();
    const auto n = static_cast<Eigen::Index>(rho.dim());
    return (1.0 - eta) * rho.matrix() +
           (eta / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
}

RealVector real_diagonal(const ComplexMatrix& m) {
    RealVector d(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) d[static_cast<std::size_t>(i)] = m(i, i).real();
    return d;
}

}  // namespace

double c_rel_partial(const DensityMatrix& rho, std::size_t k, const EntropyConfig& cfg) {
    const std::size_t d = rho.dim();
    if (k < 1 || k >= d) {
        throw CoherenceError(ErrorCode::InvalidK, "k must satisfy 1 <= k < d");
    }
    const EigenDecomposition e = eigh(rho);
    const auto spec = e.spectrum.values();
    return partial_entropy(rho.diagonal(), k, cfg) -
           partial_entropy(RealVector(spec.begin(), spec.end()), k, cfg);
}

CrossTerms cross_terms(const DensityMatrix& rho, const EntropyConfig& cfg) {
    cfg.check();
    const ComplexMatrix m = regularized(rho, cfg.regularization_eta);
    const RealVector diag = real_diagonal(m);
    const HermitianEigen eig = jacobi_eigh(m);
    const double eps = cfg.support_epsilon;

    CrossTerms out;
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        double weight = 0.0;  // <v_k| rho_diag |v_k>
        for (std::size_t i = 0; i < diag.size(); ++i) {
            weight += diag[i] * std::norm(eig.vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
        }
        const double lam = eig.values[k];
        if (lam <= eps) {
            if (weight > eps) out.singular_support = true;
            continue;
        }
        out.a -= weight * cfg.log(lam);
    }
    if (out.singular_support) out.a = std::numeric_limits<double>::infinity();

    // -Tr(rho log rho_diag) with log rho_diag diagonal
    Eigen::VectorXcd log_diag(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double v = diag[static_cast<std::size_t>(i)];
        log_diag(i) = v > eps ? cfg.log(v) : 0.0;
    }
    out.b = -(m * log_diag.asDiagonal()).trace().real();
    return out;
}

double c_cross(const DensityMatrix& rho, const EntropyConfig& cfg) {
    const CrossTerms t = cross_terms(rho, cfg);
    if (t.singular_support) {
        throw CoherenceError(ErrorCode::SingularSupport,
                             "-Tr(rho_diag log rho) diverges; use regularization_eta > 0");
    }
    return t.a - t.b;
}

double c_cross_partial(const DensityMatrix& rho, std::size_t k, const EntropyConfig& cfg) {
    cfg.check();
    const std::size_t d = rho.dim();
    if (k < 1 || k > d) {
        throw CoherenceError(ErrorCode::InvalidK, "k must satisfy 1 <= k <= d");
    }
    const ComplexMatrix m = regularized(rho, cfg.regularization_eta);
    const RealVector diag = real_diagonal(m);
    const HermitianEigen eig = jacobi_eigh(m);
    const double eps = cfg.support_epsilon;
    const auto idx = [](std::size_t i) { return static_cast<Eigen::Index>(i); };

    std::vector<std::size_t> by_weight(d);
    std::iota(by_weight.begin(), by_weight.end(), std::size_t{0});
    std::stable_sort(by_weight.begin(), by_weight.end(),
                     [&diag](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });

    double a = 0.0;
    for (std::size_t r = 0; r < k; ++r) {
        const std::size_t i = by_weight[r];
        if (diag[i] <= eps) continue;
        double log_rho_ii = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double overlap = std::norm(eig.vectors(idx(i), idx(j)));
            if (eig.values[j] <= eps) {
                if (overlap > eps) {
                    throw CoherenceError(ErrorCode::SingularSupport,
                                         "(log rho)_ii diverges on the diagonal support");
                }
                continue;
            }
            log_rho_ii += overlap * cfg.log(eig.values[j]);
        }
        a -= diag[i] * log_rho_ii;
    }

    double b = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        if (eig.values[j] <= eps) continue;
        double expect = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            if (diag[i] > eps) expect += std::norm(eig.vectors(idx(i), idx(j))) * cfg.log(diag[i]);
        }
        b -= eig.values[j] * expect;
    }
    return a - b;
}

double c2_measure(const DensityMatrix& rho) {
    const ComplexMatrix& m = rho.matrix();
    double s = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j) s += std::norm(m(i, j));
        }
    }
    return s;
}

double evaluate(const MeasureId& id, const DensityMatrix& rho, const EntropyConfig& cfg) {
    switch (id.kind) {
        case MeasureKind::RelEnt: return c_rel_ent(rho, cfg);
        case MeasureKind::L1: return c_l1(rho);
        case MeasureKind::Cross: return c_cross(rho, cfg);
        case MeasureKind::RelPartial: return c_rel_partial(rho, id.k, cfg);
        case MeasureKind::CrossPartial: return c_cross_partial(rho, id.k, cfg);
        case MeasureKind::C2: return c2_measure(rho);
    }
    return 0.0;
}

}  // namespace coherence
