#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "coherence/hermitian.hpp"

namespace coherence {

enum class LogBase { Two, E };

struct EntropyConfig {
    LogBase log_base = LogBase::Two;
    double support_epsilon = 1e-12;  // p < eps contributes 0 (0 log 0 = 0)
    double regularization_eta = 0.0; // cross-entropy only: rho -> (1-eta) rho + eta I/d

    double log(double x) const;
    void check() const;
};

enum class MeasureKind { RelEnt, L1, Cross, RelPartial, CrossPartial, C2 };

struct MeasureId {
    MeasureKind kind = MeasureKind::RelEnt;
    std::size_t k = 0;  // only for the partial variants

    std::string name() const;
    static MeasureId parse(std::string_view text);
};

double shannon_entropy(std::span<const double> p, const EntropyConfig& cfg = {});
double von_neumann_entropy(const DensityMatrix& rho, const EntropyConfig& cfg = {});

double tsallis2(const Spectrum& lambda);
double tsallis2(const DensityMatrix& rho);

double c_rel_ent(const DensityMatrix& rho, const EntropyConfig& cfg = {});
double c_l1(const DensityMatrix& rho);
double c_rel_partial(const DensityMatrix& rho, std::size_t k, const EntropyConfig& cfg = {});

// A = -Tr(rho_diag log rho), B = -Tr(rho log rho_diag). When rho (after
// regularization) has a vanishing eigenvalue whose eigenvector carries
// weight of rho_diag, A is +infinity and singular_support is set.
struct CrossTerms {
    double a = 0.0;
    double b = 0.0;
    bool singular_support = false;
};

CrossTerms cross_terms(const DensityMatrix& rho, const EntropyConfig& cfg = {});

// Throws SingularSupport when A diverges.
double c_cross(const DensityMatrix& rho, const EntropyConfig& cfg = {});

// Top-k restriction of both traces: A^k sums the k largest diagonal weights
// against (log rho)_ii, B^k sums the k largest eigenvalues against
// <v_i| log rho_diag |v_i>. Accepts 1 <= k <= d; k = d equals c_cross.
double c_cross_partial(const DensityMatrix& rho, std::size_t k, const EntropyConfig& cfg = {});

// Tr rho^2 - sum_i rho_ii^2.
double c2_measure(const DensityMatrix& rho);

double evaluate(const MeasureId& id, const DensityMatrix& rho, const EntropyConfig& cfg = {});

}  // namespace coherence
