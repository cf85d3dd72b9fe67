#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "coherence/hermitian.hpp"
#include "coherence/measures.hpp"
#include "coherence/state_gen.hpp"

namespace coherence {

// Kraus operators of an incoherent channel: every column of every operator
// has at most one nonzero entry; strict sets also have at most one nonzero
// per row.
class KrausSet {
public:
    KrausSet(std::vector<ComplexMatrix> ops, bool strict, double tol = 1e-9);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return ops_.size(); }
    bool strict() const noexcept { return strict_; }
    const std::vector<ComplexMatrix>& operators() const noexcept { return ops_; }
    const ComplexMatrix& operator[](std::size_t m) const { return ops_[m]; }

    // ||sum K^H K - I||_max
    double completeness_defect() const;

    static KrausSet identity(std::size_t d);
    static KrausSet full_dephasing(std::size_t d);

private:
    std::size_t dim_ = 0;
    std::vector<ComplexMatrix> ops_;
    bool strict_ = false;
};

KrausSet random_io_kraus(std::size_t d, std::size_t n, bool strict, Rng& rng);
KrausSet random_io_kraus(std::size_t d, std::size_t n, bool strict, const SeedStream& s);

DensityMatrix apply_channel(const KrausSet& k, const DensityMatrix& rho);

struct Outcome {
    std::size_t index = 0;
    double probability = 0.0;
    DensityMatrix state;
};

// Outcomes with probability <= prob_floor are omitted.
std::vector<Outcome> selective_outcomes(const KrausSet& k, const DensityMatrix& rho,
                                        double prob_floor = 1e-12);

enum class Axiom {
    Nonnegativity,
    Faithfulness,
    Monotonicity,
    StrongMonotonicity,
    Convexity,
    CrossDominance,
};
inline constexpr std::size_t kAxiomCount = 6;
const char* to_string(Axiom a);

struct AxiomTally {
    std::size_t checked = 0;
    std::size_t passed = 0;
    double worst_violation = 0.0;  // largest amount by which the check missed (0 if none)
};

struct AxiomFailure {
    std::uint64_t seed = 0;
    std::uint64_t stream_index = 0;
    std::string measure;
    Axiom axiom = Axiom::Nonnegativity;
    double margin = 0.0;
    ComplexMatrix state;               // input state of the failing check
    std::vector<ComplexMatrix> kraus;  // channel, for (strong) monotonicity failures
};

struct AxiomReport {
    std::size_t trials = 0;
    std::array<AxiomTally, kAxiomCount> tallies{};
    std::vector<AxiomFailure> failures;  // ordered by trial index

    // Cross-entropy asymmetry: A = -Tr(rho_diag log rho), B = -Tr(rho log rho_diag)
    double mean_delta_a = 0.0;  // non-selective, A(rho) - A(channel(rho))
    double mean_delta_b = 0.0;
    double mean_delta_a_strong = 0.0;  // A(rho) - sum_m p_m A(rho_m)
    double mean_delta_b_strong = 0.0;
    std::size_t asymmetry_samples = 0;

    const AxiomTally& tally(Axiom a) const { return tallies[static_cast<std::size_t>(a)]; }
    std::size_t failure_count() const;
};

struct AxiomSuiteConfig {
    MeasureId measure;
    std::vector<std::size_t> dims{2, 3, 4};
    std::size_t trials = 10000;
    std::size_t kraus_min = 1;
    std::size_t kraus_max = 6;
    bool strict = false;
    EntropyConfig entropy;
    double tol = 1e-8;
    // Channel applications per trial. With reuse_channel the first channel
    // is iterated; otherwise a fresh channel is drawn every step.
    std::size_t steps = 1;
    bool reuse_channel = false;
    std::uint64_t master_seed = 0;
    std::size_t workers = 1;
};

// Trial t uses stream index t, so the report is independent of workers.
AxiomReport axiom_suite(const AxiomSuiteConfig& cfg);

}  // namespace coherence
