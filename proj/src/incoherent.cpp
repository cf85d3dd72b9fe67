#include "coherence/incoherent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "coherence/parallel.hpp"

namespace coherence {

KrausSet::KrausSet(std::vector<ComplexMatrix> ops, bool strict, double tol)
    : ops_(std::move(ops)), strict_(strict) {
    if (ops_.empty()) {
        throw CoherenceError(ErrorCode::DimMismatch, "Kraus set is empty");
    }
    dim_ = static_cast<std::size_t>(ops_.front().rows());
    for (const ComplexMatrix& k : ops_) {
        if (k.rows() != k.cols() || static_cast<std::size_t>(k.rows()) != dim_) {
            throw CoherenceError(ErrorCode::DimMismatch, "Kraus operators must share one square shape");
        }
        for (Eigen::Index j = 0; j < k.cols(); ++j) {
            if ((k.col(j).array().abs() > 0.0).count() > 1) {
                throw CoherenceError(ErrorCode::InvalidBasis, "Kraus column with two nonzeros is not incoherent");
            }
        }
        if (strict_) {
            for (Eigen::Index i = 0; i < k.rows(); ++i) {
                if ((k.row(i).array().abs() > 0.0).count() > 1) {
                    throw CoherenceError(ErrorCode::InvalidBasis, "Kraus row with two nonzeros is not strictly incoherent");
                }
            }
        }
    }
    if (completeness_defect() > tol) {
        throw CoherenceError(ErrorCode::NotNormalized, "sum K^H K differs from identity");
    }
}

double KrausSet::completeness_defect() const {
    const auto n = static_cast<Eigen::Index>(dim_);
    ComplexMatrix s = ComplexMatrix::Zero(n, n);
    for (const ComplexMatrix& k : ops_) s += k.adjoint() * k;
    return (s - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

KrausSet KrausSet::identity(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    return KrausSet({ComplexMatrix::Identity(n, n)}, true);
}

KrausSet KrausSet::full_dephasing(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    std::vector<ComplexMatrix> ops;
    for (Eigen::Index m = 0; m < n; ++m) {
        ComplexMatrix k = ComplexMatrix::Zero(n, n);
        k(m, m) = 1.0;
        ops.push_back(std::move(k));
    }
    return KrausSet(std::move(ops), true);
}

namespace {

// Removes from `a` its components along `constraints` (Gram-Schmidt, two passes).
void project_out(Eigen::VectorXcd& a, const std::vector<Eigen::VectorXcd>& constraints) {
    std::vector<Eigen::VectorXcd> basis;
    for (const auto& u : constraints) {
        Eigen::VectorXcd q = u;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) q -= b * b.dot(q);
        }
        const double nrm = q.norm();
        if (nrm > 1e-12 * std::max(1.0, u.norm())) basis.push_back(q / nrm);
    }
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) a -= b * b.dot(a);
    }
}

}  // namespace

KrausSet random_io_kraus(std::size_t d, std::size_t n, bool strict, Rng& rng) {
    if (d < 2 || n < 1) {
        throw CoherenceError(ErrorCode::OutOfRange, "random_io_kraus needs d >= 2 and n >= 1");
    }
    constexpr int kRedraws = 8;
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> row_pick(0, d - 1);

    // maps[m][i] = f_m(i); amps(m, i) = amplitude of column i in operator m
    std::vector<std::vector<std::size_t>> maps(n, std::vector<std::size_t>(d));
    Eigen::MatrixXcd amps = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));

    if (strict) {
        for (auto& f : maps) {
            std::iota(f.begin(), f.end(), std::size_t{0});
            std::shuffle(f.begin(), f.end(), rng);
        }
    }

    const auto draw_amplitudes = [&] {
        Eigen::VectorXcd a(static_cast<Eigen::Index>(n));
        for (Eigen::Index m = 0; m < a.size(); ++m) {
            const double re = normal(rng);
            const double im = normal(rng);
            a(m) = Complex(re, im);
        }
        return a;
    };

    for (std::size_t i = 0; i < d; ++i) {
        Eigen::VectorXcd a;
        for (int attempt = 0; attempt <= kRedraws; ++attempt) {
            if (!strict) {
                for (std::size_t m = 0; m < n; ++m) maps[m][i] = row_pick(rng);
                if (attempt == kRedraws) {
                    // guarantee a collision-free slot in operator 0
                    std::vector<bool> used(d, false);
                    for (std::size_t j = 0; j < i; ++j) used[maps[0][j]] = true;
                    maps[0][i] = static_cast<std::size_t>(std::find(used.begin(), used.end(), false) - used.begin());
                }
            }
            a = draw_amplitudes();
            const double raw = a.norm();
            // Column i must be orthogonal to every earlier column j in the
            // stacked isometry; overlaps only arise where f_m(i) == f_m(j).
            std::vector<Eigen::VectorXcd> constraints;
            for (std::size_t j = 0; j < i; ++j) {
                Eigen::VectorXcd u = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
                bool any = false;
                for (std::size_t m = 0; m < n; ++m) {
                    if (maps[m][i] == maps[m][j]) {
                        u(static_cast<Eigen::Index>(m)) = amps(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(j));
                        any = true;
                    }
                }
                if (any) constraints.push_back(std::move(u));
            }
            project_out(a, constraints);
            if (a.norm() > 1e-3 * raw) break;
            if (attempt == kRedraws) {
                throw CoherenceError(ErrorCode::ConvergenceFailure, "could not complete IO Kraus column");
            }
        }
        a /= a.norm();
        amps.col(static_cast<Eigen::Index>(i)) = a;
    }

    const auto dn = static_cast<Eigen::Index>(d);
    std::vector<ComplexMatrix> ops;
    ops.reserve(n);
    for (std::size_t m = 0; m < n; ++m) {
        ComplexMatrix k = ComplexMatrix::Zero(dn, dn);
        for (std::size_t i = 0; i < d; ++i) {
            k(static_cast<Eigen::Index>(maps[m][i]), static_cast<Eigen::Index>(i)) =
                amps(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(i));
        }
        ops.push_back(std::move(k));
    }
    return KrausSet(std::move(ops), strict);
}

KrausSet random_io_kraus(std::size_t d, std::size_t n, bool strict, const SeedStream& s) {
    Rng rng = s.engine();
    return random_io_kraus(d, n, strict, rng);
}

DensityMatrix apply_channel(const KrausSet& k, const DensityMatrix& rho) {
    if (k.dim() != rho.dim()) {
        throw CoherenceError(ErrorCode::DimMismatch, "channel and state dimensions differ");
    }
    const auto n = static_cast<Eigen::Index>(rho.dim());
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (const ComplexMatrix& op : k.operators()) out += op * rho.matrix() * op.adjoint();
    out = (out + out.adjoint()).eval() * 0.5;
    return validate_density(out);
}

std::vector<Outcome> selective_outcomes(const KrausSet& k, const DensityMatrix& rho, double prob_floor) {
    if (k.dim() != rho.dim()) {
        throw CoherenceError(ErrorCode::DimMismatch, "channel and state dimensions differ");
    }
    std::vector<Outcome> out;
    for (std::size_t m = 0; m < k.size(); ++m) {
        ComplexMatrix branch = k[m] * rho.matrix() * k[m].adjoint();
        branch = (branch + branch.adjoint()).eval() * 0.5;
        const double p = branch.trace().real();
        if (!(p > prob_floor)) continue;
        // rounding in the branch is absolute, so the PSD slack scales with 1/p
        const double tol = kDefaultDensityTol + 1e-13 / p;
        out.push_back({m, p, validate_density(branch / p, tol)});
    }
    return out;
}

const char* to_string(Axiom a) {
    switch (a) {
        case Axiom::Nonnegativity: return "nonnegativity";
        case Axiom::Faithfulness: return "faithfulness";
        case Axiom::Monotonicity: return "monotonicity";
        case Axiom::StrongMonotonicity: return "strong_monotonicity";
        case Axiom::Convexity: return "convexity";
        case Axiom::CrossDominance: return "cross_dominance";
    }
    return "unknown";
}

std::size_t AxiomReport::failure_count() const {
    std::size_t f = 0;
    for (const auto& t : tallies) f += t.checked - t.passed;
    return f;
}

namespace {

struct TrialResult {
    std::array<AxiomTally, kAxiomCount> tallies{};
    std::vector<AxiomFailure> failures;
    double delta_a = 0.0;
    double delta_b = 0.0;
    double delta_a_strong = 0.0;
    double delta_b_strong = 0.0;
    bool asymmetry_valid = false;
};

bool is_cross(const MeasureId& id) {
    return id.kind == MeasureKind::Cross || id.kind == MeasureKind::CrossPartial;
}

class TrialRunner {
public:
    TrialRunner(const AxiomSuiteConfig& cfg, std::uint64_t index, TrialResult& out)
        : cfg_(cfg), index_(index), out_(out), rng_(SeedStream{cfg.master_seed, index}.engine()) {}

    void run() {
        std::uniform_int_distribution<std::size_t> dim_pick(0, cfg_.dims.size() - 1);
        const std::size_t d = cfg_.dims[dim_pick(rng_)];
        const DensityMatrix rho = draw_state(d);
        rho_ = &rho;

        const auto value = [&](const DensityMatrix& s) { return evaluate(cfg_.measure, s, cfg_.entropy); };

        // (1) nonnegativity and (2) faithfulness on rho and its dephased state
        guarded(Axiom::Nonnegativity, [&] { return -cfg_.tol - value(rho); });
        guarded(Axiom::Faithfulness, [&] {
            // C <= tol must force the off-diagonal below the Pinsker-type bound
            // the measure implies: 2|rho_ij| for l1, sqrt(C/2) otherwise.
            const double implied = cfg_.measure.kind == MeasureKind::L1 ? cfg_.tol / 2.0 : std::sqrt(cfg_.tol / 2.0);
            double worst = -1.0;
            for (const DensityMatrix& s : {rho, dephase(rho)}) {
                const double c = value(s);
                const double off = max_offdiagonal(s.matrix());
                if (off <= cfg_.tol && std::abs(c) > cfg_.tol) worst = std::max(worst, std::abs(c) - cfg_.tol);
                if (std::abs(c) <= cfg_.tol && off > implied) worst = std::max(worst, off - implied);
            }
            return worst;
        });

        // (3) monotonicity and (4) strong monotonicity along the channel sequence
        std::uniform_int_distribution<std::size_t> n_pick(cfg_.kraus_min, cfg_.kraus_max);
        std::optional<KrausSet> channel;
        DensityMatrix current = rho;
        bool mono_ok = true;
        bool strong_ok = true;
        double mono_worst = 0.0;
        double strong_worst = 0.0;
        DensityMatrix mono_state = rho;
        DensityMatrix strong_state = rho;
        std::vector<ComplexMatrix> mono_kraus;
        std::vector<ComplexMatrix> strong_kraus;
        for (std::size_t step = 0; step < std::max<std::size_t>(1, cfg_.steps); ++step) {
            if (!channel || !cfg_.reuse_channel) channel = random_io_kraus(d, n_pick(rng_), cfg_.strict, rng_);
            const DensityMatrix next = apply_channel(*channel, current);
            const auto outcomes = selective_outcomes(*channel, current);
            record_asymmetry(current, next, outcomes, step == 0);

            const auto mono = attempt([&] { return value(next) - value(current) - cfg_.tol; });
            if (mono > 0.0) {
                if (mono_ok) {
                    mono_state = current;
                    mono_kraus = channel->operators();
                }
                mono_ok = false;
                mono_worst = std::max(mono_worst, mono);
            }
            const auto strong = attempt([&] {
                double avg = 0.0;
                for (const Outcome& o : outcomes) avg += o.probability * value(o.state);
                return avg - value(current) - cfg_.tol;
            });
            if (strong > 0.0) {
                if (strong_ok) {
                    strong_state = current;
                    strong_kraus = channel->operators();
                }
                strong_ok = false;
                strong_worst = std::max(strong_worst, strong);
            }
            current = next;
        }
        tally(Axiom::Monotonicity, mono_ok, mono_worst, mono_state, std::move(mono_kraus));
        tally(Axiom::StrongMonotonicity, strong_ok, strong_worst, strong_state, std::move(strong_kraus));

        // (5) convexity over a random three-state mixture
        guarded(Axiom::Convexity, [&] {
            const RealVector q = random_simplex(3, 3, rng_);
            const DensityMatrix r1 = draw_state(d);
            const DensityMatrix r2 = draw_state(d);
            const DensityMatrix mix =
                validate_density(q[0] * rho.matrix() + q[1] * r1.matrix() + q[2] * r2.matrix());
            return value(mix) - (q[0] * value(rho) + q[1] * value(r1) + q[2] * value(r2)) - cfg_.tol;
        });

        // (6) cross dominance, only meaningful for the cross-entropy measure
        if (cfg_.measure.kind == MeasureKind::Cross) {
            guarded(Axiom::CrossDominance, [&] {
                return c_rel_ent(rho, cfg_.entropy) - c_cross(rho, cfg_.entropy) - cfg_.tol;
            });
        }
    }

private:
    DensityMatrix draw_state(std::size_t d) {
        std::uniform_int_distribution<int> method_pick(0, 1);
        std::uniform_int_distribution<std::size_t> rank_pick(1, d);
        const DensityMethod method = method_pick(rng_) == 0 ? DensityMethod::Ginibre : DensityMethod::SpectrumHaar;
        const std::size_t rank = is_cross(cfg_.measure) ? d : rank_pick(rng_);
        return random_density(d, rank, method, rng_);
    }

    // Runs a check returning its violation (> 0 means failed). Exceptions
    // from the measure count as an infinite violation.
    template <typename F>
    double attempt(F&& check) {
        try {
            return check();
        } catch (const CoherenceError&) {
            return std::numeric_limits<double>::infinity();
        }
    }

    template <typename F>
    void guarded(Axiom axiom, F&& check) {
        const double v = attempt(std::forward<F>(check));
        tally(axiom, !(v > 0.0), v > 0.0 ? v : 0.0, *rho_);
    }

    void tally(Axiom axiom, bool ok, double violation, const DensityMatrix& state,
               std::vector<ComplexMatrix> kraus = {}) {
        AxiomTally& t = out_.tallies[static_cast<std::size_t>(axiom)];
        ++t.checked;
        if (ok) {
            ++t.passed;
        } else {
            t.worst_violation = std::max(t.worst_violation, violation);
            out_.failures.push_back(
                {cfg_.master_seed, index_, cfg_.measure.name(), axiom, violation, state.matrix(), std::move(kraus)});
        }
    }

    void record_asymmetry(const DensityMatrix& before, const DensityMatrix& after,
                          const std::vector<Outcome>& outcomes, bool first_step) {
        if (!first_step) return;
        const CrossTerms b = cross_terms(before, cfg_.entropy);
        const CrossTerms a = cross_terms(after, cfg_.entropy);
        if (b.singular_support || a.singular_support) return;
        double avg_a = 0.0;
        double avg_b = 0.0;
        for (const Outcome& o : outcomes) {
            const CrossTerms t = cross_terms(o.state, cfg_.entropy);
            if (t.singular_support) return;
            avg_a += o.probability * t.a;
            avg_b += o.probability * t.b;
        }
        out_.delta_a = b.a - a.a;
        out_.delta_b = b.b - a.b;
        out_.delta_a_strong = b.a - avg_a;
        out_.delta_b_strong = b.b - avg_b;
        out_.asymmetry_valid = true;
    }

    const AxiomSuiteConfig& cfg_;
    std::uint64_t index_;
    TrialResult& out_;
    Rng rng_;
    const DensityMatrix* rho_ = nullptr;
};

}  // namespace

AxiomReport axiom_suite(const AxiomSuiteConfig& cfg) {
    if (cfg.trials < 1 || cfg.dims.empty() || cfg.kraus_min < 1 || cfg.kraus_max < cfg.kraus_min) {
        throw CoherenceError(ErrorCode::OutOfRange, "invalid axiom suite configuration");
    }
    for (std::size_t d : cfg.dims) {
        if (d < 2) throw CoherenceError(ErrorCode::DimensionTooSmall, "axiom suite needs d >= 2");
    }
    cfg.entropy.check();

    std::vector<TrialResult> results(cfg.trials);
    parallel_for(cfg.trials, cfg.workers, [&](std::size_t t) {
        TrialRunner(cfg, static_cast<std::uint64_t>(t), results[t]).run();
    });

    AxiomReport report;
    report.trials = cfg.trials;
    for (const TrialResult& r : results) {
        for (std::size_t a = 0; a < kAxiomCount; ++a) {
            report.tallies[a].checked += r.tallies[a].checked;
            report.tallies[a].passed += r.tallies[a].passed;
            report.tallies[a].worst_violation =
                std::max(report.tallies[a].worst_violation, r.tallies[a].worst_violation);
        }
        report.failures.insert(report.failures.end(), r.failures.begin(), r.failures.end());
        if (r.asymmetry_valid) {
            report.mean_delta_a += r.delta_a;
            report.mean_delta_b += r.delta_b;
            report.mean_delta_a_strong += r.delta_a_strong;
            report.mean_delta_b_strong += r.delta_b_strong;
            ++report.asymmetry_samples;
        }
    }
    if (report.asymmetry_samples > 0) {
        const auto n = static_cast<double>(report.asymmetry_samples);
        report.mean_delta_a /= n;
        report.mean_delta_b /= n;
        report.mean_delta_a_strong /= n;
        report.mean_delta_b_strong /= n;
    }
    return report;
}

}  // namespace coherence
