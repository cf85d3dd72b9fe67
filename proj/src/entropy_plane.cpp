#include "coherence/entropy_plane.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace coherence {

std::string_view to_string(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::QubitLower: return "qubit_lower";
        case FamilyTag::LowerIntermediate: return "lower_intermediate";
        case FamilyTag::LowerUpper: return "lower_upper";
        case FamilyTag::MiddleIntermediate: return "middle_intermediate";
        case FamilyTag::UpperDegenerate: return "upper_degenerate";
    }
    return "unknown";
}

bool CurveFamily::valid_for(FamilyTag tag, std::size_t dim) {
    if (tag == FamilyTag::LowerIntermediate || tag == FamilyTag::MiddleIntermediate) return dim >= 4;
    return dim >= 2;
}

CurveFamily::CurveFamily(FamilyTag tag, std::size_t dim) : tag_(tag), dim_(dim) {
    if (!valid_for(tag, dim)) {
        throw CoherenceError(ErrorCode::FamilyInvalidForDim,
                             std::string(to_string(tag)) + " is undefined for d = " + std::to_string(dim));
    }
}

std::string CurveFamily::name() const {
    std::string n(to_string(tag_));
    if (tag_ == FamilyTag::LowerIntermediate || tag_ == FamilyTag::MiddleIntermediate) {
        n += "(" + std::to_string(order()) + ")";
    }
    return n;
}

Spectrum family_spectrum(const CurveFamily& f, double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw CoherenceError(ErrorCode::OutOfRange, "family parameter t must lie in [0, 1]");
    }
    const std::size_t d = f.dim();
    const auto dd = static_cast<double>(d);
    RealVector lam(d, 0.0);
    switch (f.tag()) {
        case FamilyTag::QubitLower: {
            lam[0] = 0.5 + 0.5 * t;
            lam[1] = 1.0 - lam[0];
            break;
        }
        case FamilyTag::LowerIntermediate: {
            const std::size_t m = f.order();
            const double tail = (1.0 - t) / static_cast<double>(m + 2);
            const double level = (1.0 - tail) / static_cast<double>(m + 1);
            for (std::size_t i = 0; i <= m; ++i) lam[i] = level;
            lam[m + 1] = tail;
            break;
        }
        case FamilyTag::LowerUpper: {
            const double last = (1.0 - t) / dd;
            const double level = (1.0 - last) / (dd - 1.0);
            for (std::size_t i = 0; i + 1 < d; ++i) lam[i] = level;
            lam[d - 1] = last;
            break;
        }
        case FamilyTag::MiddleIntermediate: {
            const std::size_t n = f.order();
            const double floor = 1.0 / static_cast<double>(n + 2);
            lam[0] = floor + t * (1.0 - floor);
            const double level = (1.0 - lam[0]) / static_cast<double>(n + 1);
            for (std::size_t i = 1; i <= n + 1; ++i) lam[i] = level;
            break;
        }
        case FamilyTag::UpperDegenerate: {
            lam[0] = 1.0 / dd + t * (1.0 - 1.0 / dd);
            const double level = (1.0 - lam[0]) / (dd - 1.0);
            for (std::size_t i = 1; i < d; ++i) lam[i] = level;
            break;
        }
    }
    return Spectrum::from_values(std::move(lam));
}

PlanePoint plane_point(const Spectrum& lambda, const EntropyConfig& cfg) {
    return {tsallis2(lambda), shannon_entropy(lambda.values(), cfg)};
}

std::vector<BoundarySample> boundary_samples(const CurveFamily& f, std::size_t count,
                                             const EntropyConfig& cfg) {
    if (count < 2) {
        throw CoherenceError(ErrorCode::OutOfRange, "boundary_samples needs at least 2 samples");
    }
    std::vector<BoundarySample> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        out.push_back({t, plane_point(family_spectrum(f, t), cfg)});
    }
    return out;
}

std::optional<double> interpolate_svn(const std::vector<BoundarySample>& curve, double s2) {
    if (curve.size() < 2) return std::nullopt;
    std::vector<PlanePoint> pts;
    pts.reserve(curve.size());
    for (const auto& s : curve) pts.push_back(s.point);
    std::sort(pts.begin(), pts.end(), [](const PlanePoint& a, const PlanePoint& b) { return a.s2 < b.s2; });
    constexpr double kEdge = 1e-12;
    if (s2 < pts.front().s2 - kEdge || s2 > pts.back().s2 + kEdge) return std::nullopt;
    if (s2 <= pts.front().s2) return pts.front().svn;
    if (s2 >= pts.back().s2) return pts.back().svn;
    const auto hi = std::lower_bound(pts.begin(), pts.end(), s2,
                                     [](const PlanePoint& p, double v) { return p.s2 < v; });
    const auto lo = hi - 1;
    const double span = hi->s2 - lo->s2;
    if (span <= 0.0) return std::max(lo->svn, hi->svn);
    const double w = (s2 - lo->s2) / span;
    return lo->svn + w * (hi->svn - lo->svn);
}

std::pair<double, double> eur_curve_point(std::size_t d, double a, const EntropyConfig& cfg) {
    if (d < 2) {
        throw CoherenceError(ErrorCode::DimensionTooSmall, "eur curve needs d >= 2");
    }
    const double lo = 1.0 / static_cast<double>(d);
    if (!(a >= lo - 1e-15 && a <= 1.0)) {
        throw CoherenceError(ErrorCode::OutOfRange, "a must lie in [1/d, 1]");
    }
    const double rest = 1.0 - a;
    double x = 0.0;
    if (a > 0.0) x -= a * cfg.log(a);
    if (rest > 0.0) x -= rest * cfg.log(rest / static_cast<double>(d - 1));
    return {x, rest};
}

double entropy_lambda_gap(const DensityMatrix& rho, const EntropyConfig& cfg) {
    const EigenDecomposition e = eigh(rho);
    return shannon_entropy(e.spectrum.values(), cfg) - (1.0 - e.spectrum.max());
}

MeasurementBasis::MeasurementBasis(ComplexMatrix vectors, std::string label, double tol)
    : vectors_(std::move(vectors)), label_(std::move(label)) {
    if (vectors_.rows() != vectors_.cols() || vectors_.rows() == 0) {
        throw CoherenceError(ErrorCode::InvalidBasis, "basis matrix must be square");
    }
    const auto n = vectors_.rows();
    const double defect = (vectors_.adjoint() * vectors_ - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (defect > tol) {
        throw CoherenceError(ErrorCode::InvalidBasis, "basis '" + label_ + "' is not orthonormal");
    }
}

MeasurementBasis MeasurementBasis::computational(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    return MeasurementBasis(ComplexMatrix::Identity(n, n), "computational");
}

MeasurementBasis MeasurementBasis::fourier(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix f(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            // reduce jk mod d first so the phase stays exact for large d
            const auto jk = static_cast<double>((j * k) % n);
            f(j, k) = std::polar(norm, 2.0 * std::numbers::pi * jk / static_cast<double>(d));
        }
    }
    return MeasurementBasis(std::move(f), "fourier");
}

MeasurementBasis MeasurementBasis::haar(std::size_t d, Rng& rng) {
    return MeasurementBasis(haar_unitary(d, rng), "haar");
}

RealVector measurement_probs(const DensityMatrix& rho, const MeasurementBasis& basis) {
    if (rho.dim() != basis.dim()) {
        throw CoherenceError(ErrorCode::DimMismatch, "state and basis dimensions differ");
    }
    const ComplexMatrix& v = basis.vectors();
    RealVector p(rho.dim());
    for (Eigen::Index i = 0; i < v.cols(); ++i) {
        const double pi = v.col(i).dot(rho.matrix() * v.col(i)).real();
        p[static_cast<std::size_t>(i)] = std::max(0.0, pi);
    }
    return p;
}

double max_overlap(const MeasurementBasis& x, const MeasurementBasis& z) {
    if (x.dim() != z.dim()) {
        throw CoherenceError(ErrorCode::DimMismatch, "bases differ in dimension");
    }
    return (x.vectors().adjoint() * z.vectors()).cwiseAbs().maxCoeff();
}

EurReport refined_eur_report(const DensityMatrix& rho, const std::vector<MeasurementBasis>& bases,
                             const EntropyConfig& cfg, unsigned root_order) {
    if (bases.size() < 2) {
        throw CoherenceError(ErrorCode::TooFewBases, "refined EUR needs at least two bases");
    }
    if (root_order < 1) {
        throw CoherenceError(ErrorCode::OutOfRange, "root order must be >= 1");
    }
    EurReport r;
    r.root_order = root_order;
    for (const MeasurementBasis& b : bases) {
        const RealVector p = measurement_probs(rho, b);
        const double h = shannon_entropy(p, cfg);
        const double lmax = *std::max_element(p.begin(), p.end());
        r.labels.push_back(b.label());
        r.entropies.push_back(h);
        r.lambda_max.push_back(lmax);
        r.lhs += h;
        r.refined_rhs_root += std::pow(std::max(0.0, 1.0 - lmax), 1.0 / static_cast<double>(root_order));
    }
    r.refined_rhs = static_cast<double>(bases.size());
    for (double l : r.lambda_max) r.refined_rhs -= l;
    if (bases.size() == 2) {
        const double c = std::min(1.0, max_overlap(bases[0], bases[1]));
        r.mu_rhs = -2.0 * cfg.log(c);
        if (*r.mu_rhs == 0.0) r.mu_rhs = 0.0;  // avoid -0
    }
    r.holds = r.lhs >= r.refined_rhs - 1e-9;
    r.refined_tighter = r.mu_rhs.has_value() && r.refined_rhs > *r.mu_rhs + 1e-12;
    return r;
}

}  // namespace coherence
