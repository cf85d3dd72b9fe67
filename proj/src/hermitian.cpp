#include "coherence/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace coherence {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NotFinite: return "NotFinite";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::TraceZero: return "TraceZero";
        case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorCode::InvalidSpectrum: return "InvalidSpectrum";
        case ErrorCode::InvalidRank: return "InvalidRank";
        case ErrorCode::InvalidK: return "InvalidK";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::SingularSupport: return "SingularSupport";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::FamilyInvalidForDim: return "FamilyInvalidForDim";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::TooFewBases: return "TooFewBases";
        case ErrorCode::InvalidBasis: return "InvalidBasis";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Spectrum Spectrum::from_values(RealVector values) {
    constexpr double kClamp = 1e-10;
    if (values.empty()) {
        throw CoherenceError(ErrorCode::InvalidSpectrum, "empty spectrum");
    }
    bool clamped = false;
    for (double& v : values) {
        if (!std::isfinite(v) || v < -kClamp || v > 1.0 + kClamp) {
            throw CoherenceError(ErrorCode::InvalidSpectrum, "entry outside [0, 1]");
        }
        if (v < 0.0) {
            v = 0.0;
            clamped = true;
        } else if (v > 1.0) {
            v = 1.0;
            clamped = true;
        }
    }
    const double total = std::accumulate(values.begin(), values.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) {
        throw CoherenceError(ErrorCode::InvalidSpectrum, "entries do not sum to 1");
    }
    if (clamped) {
        for (double& v : values) v /= total;
    }
    std::stable_sort(values.begin(), values.end(), std::greater<>());
    return Spectrum(std::move(values));
}

std::size_t Spectrum::rank(double eps) const {
    return static_cast<std::size_t>(
        std::count_if(values_.begin(), values_.end(), [eps](double v) { return v > eps; }));
}

RealVector DensityMatrix::diagonal() const {
    RealVector d(dim());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = m_(i, i).real();
    return d;
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    return validate_density(ComplexMatrix::Identity(n, n) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::diagonal_state(std::span<const double> p) {
    const auto n = static_cast<Eigen::Index>(p.size());
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = p[static_cast<std::size_t>(i)];
    return validate_density(m);
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
    const Eigen::VectorXcd v = psi / psi.norm();
    return validate_density(v * v.adjoint());
}

double max_hermitian_defect(const ComplexMatrix& m) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i; j < m.cols(); ++j) {
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return worst;
}

double max_offdiagonal(const ComplexMatrix& m) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j) worst = std::max(worst, std::abs(m(i, j)));
        }
    }
    return worst;
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (i != j) s += std::norm(a(i, j));
        }
    }
    return std::sqrt(s);
}

// Zeroes a(p, q) with J = diag-phase * real Givens, A <- J^H A J, V <- V J.
void rotate(ComplexMatrix& a, ComplexMatrix& v, Eigen::Index p, Eigen::Index q) {
    const Complex apq = a(p, q);
    const double b = std::abs(apq);
    if (b == 0.0) return;
    const Complex phase = std::conj(apq) / b;  // e^{-i arg(apq)}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * b);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Complex jpp = c;
    const Complex jpq = s;
    const Complex jqp = -s * phase;
    const Complex jqq = c * phase;

    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * jpp + akq * jqp;
        a(k, q) = akp * jpq + akq * jqq;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
        a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = app - t * b;
    a(q, q) = aqq + t * b;
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * jpp + vkq * jqp;
        v(k, q) = vkp * jpq + vkq * jqq;
    }
}

}  // namespace

HermitianEigen jacobi_eigh(const ComplexMatrix& input, const JacobiOptions& opts) {
    if (input.rows() != input.cols()) {
        throw CoherenceError(ErrorCode::NotSquare, "eigh requires a square matrix");
    }
    const Eigen::Index n = input.rows();
    ComplexMatrix a = (input + input.adjoint()) * 0.5;
    ComplexMatrix v = ComplexMatrix::Identity(n, n);
    const double scale = std::max(1.0, a.norm());

    bool converged = offdiag_norm(a) <= opts.off_tol * scale;
    for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
        }
        converged = offdiag_norm(a) <= opts.off_tol * scale;
    }
    if (!converged) {
        throw CoherenceError(ErrorCode::ConvergenceFailure,
                             "Jacobi sweep cap of " + std::to_string(opts.max_sweeps) + " exceeded");
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&a](Eigen::Index x, Eigen::Index y) { return a(x, x).real() > a(y, y).real(); });

    HermitianEigen out;
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[static_cast<std::size_t>(k)] = a(order[k], order[k]).real();
        out.vectors.col(k) = v.col(order[k]);
    }
    return out;
}

DensityMatrix validate_density(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw CoherenceError(ErrorCode::NotSquare, "matrix is " + std::to_string(m.rows()) + "x" +
                                                       std::to_string(m.cols()));
    }
    if (!m.allFinite()) {
        throw CoherenceError(ErrorCode::NotFinite, "matrix has non-finite entries");
    }
    if (max_hermitian_defect(m) > tol) {
        throw CoherenceError(ErrorCode::NotHermitian, "Hermiticity defect exceeds tolerance");
    }
    ComplexMatrix h = (m + m.adjoint()) * 0.5;
    const double trace = h.trace().real();
    if (std::abs(trace) <= tol) {
        throw CoherenceError(ErrorCode::TraceZero, "trace vanishes");
    }
    if (trace != 1.0) h /= trace;

    const HermitianEigen eig = jacobi_eigh(h);
    const double min_eig = eig.values.back();
    if (min_eig < -tol) {
        throw CoherenceError(ErrorCode::NotPSD, "minimum eigenvalue " + std::to_string(min_eig));
    }
    if (min_eig < 0.0) {
        Eigen::VectorXd lam(static_cast<Eigen::Index>(eig.values.size()));
        for (std::size_t i = 0; i < eig.values.size(); ++i) {
            lam(static_cast<Eigen::Index>(i)) = std::max(0.0, eig.values[i]);
        }
        lam /= lam.sum();
        h = eig.vectors * lam.asDiagonal() * eig.vectors.adjoint();
        h = (h + h.adjoint()).eval() * 0.5;
    }
    return DensityMatrix(std::move(h));
}

EigenDecomposition eigh(const DensityMatrix& rho) {
    HermitianEigen eig = jacobi_eigh(rho.matrix());
    return {Spectrum::from_values(std::move(eig.values)), std::move(eig.vectors)};
}

DensityMatrix dephase(const DensityMatrix& rho) {
    const ComplexMatrix& m = rho.matrix();
    ComplexMatrix d = ComplexMatrix::Zero(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) d(i, i) = m(i, i).real();
    return DensityMatrix(std::move(d));
}

}  // namespace coherence
