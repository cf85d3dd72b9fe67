#include "coherence/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace coherence {

namespace {

RealVector sorted_desc(std::span<const double> v) {
    RealVector out(v.begin(), v.end());
    std::stable_sort(out.begin(), out.end(), std::greater<>());
    return out;
}

RealVector squared(std::span<const double> v) {
    RealVector out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](double x) { return x * x; });
    return out;
}

}  // namespace

PartialSumMargin worst_partial_sum_margin(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw CoherenceError(ErrorCode::LengthMismatch, "vectors differ in length");
    }
    const RealVector ps = sorted_desc(p);
    const RealVector qs = sorted_desc(q);
    PartialSumMargin worst{std::numeric_limits<double>::infinity(), 0};
    double sp = 0.0;
    double sq = 0.0;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        sp += ps[k];
        sq += qs[k];
        if (sp - sq < worst.margin) worst = {sp - sq, k + 1};
    }
    if (ps.empty()) worst.margin = 0.0;
    return worst;
}

bool majorizes(std::span<const double> p, std::span<const double> q, MajorizationMode mode,
               double tol) {
    if (p.size() != q.size()) {
        throw CoherenceError(ErrorCode::LengthMismatch, "vectors differ in length");
    }
    for (double x : p) {
        if (!std::isfinite(x)) throw CoherenceError(ErrorCode::NotFinite, "non-finite entry");
    }
    for (double x : q) {
        if (!std::isfinite(x)) throw CoherenceError(ErrorCode::NotFinite, "non-finite entry");
    }
    if (mode == MajorizationMode::Strong) {
        const double tp = std::accumulate(p.begin(), p.end(), 0.0);
        const double tq = std::accumulate(q.begin(), q.end(), 0.0);
        if (std::abs(tp - tq) > tol) return false;
    }
    return worst_partial_sum_margin(p, q).margin >= -tol;
}

MajorizationReport schur_horn_report(const DensityMatrix& rho, double tol) {
    const EigenDecomposition e = eigh(rho);
    MajorizationReport r;
    r.dim = rho.dim();
    r.spectrum.assign(e.spectrum.values().begin(), e.spectrum.values().end());
    r.diagonal = sorted_desc(rho.diagonal());

    const PartialSumMargin plain = worst_partial_sum_margin(r.spectrum, r.diagonal);
    r.worst_margin_plain = plain.margin;
    r.k_at_worst = plain.k;
    r.plain_ok = majorizes(r.spectrum, r.diagonal, MajorizationMode::Strong, tol);

    const RealVector s2 = squared(r.spectrum);
    const RealVector d2 = squared(r.diagonal);
    const PartialSumMargin sq = worst_partial_sum_margin(s2, d2);
    r.worst_margin_squared = sq.margin;
    r.k_at_worst_squared = sq.k;
    r.squared_ok = majorizes(s2, d2, MajorizationMode::Weak, tol);
    return r;
}

RealVector gil_indices(std::span<const double> descending_values) {
    const std::size_t d = descending_values.size();
    if (d < 2) {
        throw CoherenceError(ErrorCode::DimensionTooSmall, "Gil indices need d >= 2");
    }
    const double head = std::accumulate(descending_values.begin(), descending_values.end() - 1, 0.0);
    const double lambda_min = descending_values[d - 1];
    RealVector g(d - 1);
    for (std::size_t j = 1; j < d; ++j) g[j - 1] = head - static_cast<double>(j) * lambda_min;
    return g;
}

RealVector gil_indices(const Spectrum& lambda) { return gil_indices(lambda.values()); }

std::string_view to_string(GilVerdict v) {
    switch (v) {
        case GilVerdict::ForwardHolds: return "forward_holds";
        case GilVerdict::ReverseHolds: return "reverse_holds";
        case GilVerdict::Mixed: return "mixed";
    }
    return "mixed";
}

GilReport gil_report(const DensityMatrix& rho, double tol) {
    if (rho.dim() < 2) {
        throw CoherenceError(ErrorCode::DimensionTooSmall, "Gil indices need d >= 2");
    }
    const EigenDecomposition e = eigh(rho);
    GilReport r;
    r.spectrum_gil = sorted_desc(gil_indices(e.spectrum));
    r.diagonal_gil = sorted_desc(gil_indices(sorted_desc(rho.diagonal())));

    bool forward = true;
    bool reverse = true;
    double sd = 0.0;
    double ss = 0.0;
    for (std::size_t k = 0; k < r.spectrum_gil.size(); ++k) {
        sd += r.diagonal_gil[k];
        ss += r.spectrum_gil[k];
        const double diff = sd - ss;
        r.differences.push_back(diff);
        if (diff < -tol) forward = false;
        if (diff > tol) reverse = false;
    }
    r.verdict = forward ? GilVerdict::ForwardHolds
                        : (reverse ? GilVerdict::ReverseHolds : GilVerdict::Mixed);
    return r;
}

}  // namespace coherence
