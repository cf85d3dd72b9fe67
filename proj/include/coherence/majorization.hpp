#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "coherence/hermitian.hpp"

namespace coherence {

enum class MajorizationMode { Strong, Weak };

// Sorts both vectors descending and compares partial sums within tol.
// Strong mode additionally requires equal totals.
bool majorizes(std::span<const double> p, std::span<const double> q, MajorizationMode mode,
               double tol = 1e-10);

// min_k (sum_{i<=k} p_i - sum_{i<=k} q_i) over descending-sorted vectors,
// with the k (1-based) where it is attained.
struct PartialSumMargin {
    double margin = 0.0;
    std::size_t k = 0;
};
PartialSumMargin worst_partial_sum_margin(std::span<const double> p, std::span<const double> q);

struct MajorizationReport {
    std::size_t dim = 0;
    bool plain_ok = false;
    bool squared_ok = false;
    double worst_margin_plain = 0.0;
    double worst_margin_squared = 0.0;
    std::size_t k_at_worst = 0;          // plain
    std::size_t k_at_worst_squared = 0;
    RealVector spectrum;
    RealVector diagonal;                 // sorted descending
};

// Plain: spectrum strongly majorizes the diagonal. Squared: squared
// spectrum weakly majorizes the squared diagonal.
MajorizationReport schur_horn_report(const DensityMatrix& rho, double tol = 1e-10);

// G_j = sum_{i=1}^{d-1} lambda_i - j * lambda_min for j = 1..d-1, taken
// literally; values outside [0, 1] are kept.
RealVector gil_indices(std::span<const double> descending_values);
RealVector gil_indices(const Spectrum& lambda);

enum class GilVerdict { ForwardHolds, ReverseHolds, Mixed };
std::string_view to_string(GilVerdict v);

struct GilReport {
    RealVector spectrum_gil;   // sorted descending
    RealVector diagonal_gil;   // sorted descending
    RealVector differences;    // per k: sum G^diag - sum G
    GilVerdict verdict = GilVerdict::Mixed;
};

GilReport gil_report(const DensityMatrix& rho, double tol = 1e-10);

}  // namespace coherence
