#include "coherence/state_gen.hpp"

#include <algorithm>
#include <cmath>

#include "coherence/measures.hpp"

namespace coherence {

std::mt19937_64 SeedStream::engine() const {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_index),
                      static_cast<std::uint32_t>(stream_index >> 32)};
    return std::mt19937_64(seq);
}

SeedStream SeedStream::substream(std::uint64_t salt) const {
    // splitmix64 finalizer
    std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return {z, stream_index};
}

DensityMethod parse_density_method(std::string_view name) {
    if (name == "ginibre") return DensityMethod::Ginibre;
    if (name == "spectrum-haar") return DensityMethod::SpectrumHaar;
    throw CoherenceError(ErrorCode::ParseError, "unknown density method '" + std::string(name) + "'");
}

std::string_view to_string(DensityMethod m) {
    return m == DensityMethod::Ginibre ? "ginibre" : "spectrum-haar";
}

ComplexMatrix ginibre_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double scale = 1.0 / std::sqrt(2.0);
    ComplexMatrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im) * scale;
        }
    }
    return g;
}

ComplexMatrix haar_unitary(std::size_t d, Rng& rng) {
    const auto n = static_cast<Eigen::Index>(d);
    const ComplexMatrix z = ginibre_matrix(n, n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix& r = qr.matrixQR();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double mag = std::abs(r(i, i));
        if (mag > 0.0) q.col(i) *= r(i, i) / mag;
    }
    return q;
}

ComplexMatrix haar_unitary(std::size_t d, const SeedStream& s) {
    Rng rng = s.engine();
    return haar_unitary(d, rng);
}

RealVector random_simplex(std::size_t d, std::size_t rank, Rng& rng) {
    if (rank < 1 || rank > d) {
        throw CoherenceError(ErrorCode::InvalidRank, "rank must lie in [1, d]");
    }
    std::exponential_distribution<double> expo(1.0);
    RealVector p(d, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < rank; ++i) {
        p[i] = expo(rng);
        total += p[i];
    }
    for (std::size_t i = 0; i < rank; ++i) p[i] /= total;
    std::sort(p.begin(), p.end(), std::greater<>());
    return p;
}

DensityMatrix random_density(std::size_t d, std::size_t rank, DensityMethod method, Rng& rng) {
    if (d < 1 || rank < 1 || rank > d) {
        throw CoherenceError(ErrorCode::InvalidRank, "rank " + std::to_string(rank) +
                                                         " invalid for dimension " + std::to_string(d));
    }
    if (method == DensityMethod::Ginibre) {
        const ComplexMatrix g =
            ginibre_matrix(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(rank), rng);
        const ComplexMatrix w = g * g.adjoint();
        return validate_density(w / w.trace().real());
    }
    return from_spectrum(Spectrum::from_values(random_simplex(d, rank, rng)), rng);
}

DensityMatrix random_density(std::size_t d, std::size_t rank, DensityMethod method,
                             const SeedStream& s) {
    Rng rng = s.engine();
    return random_density(d, rank, method, rng);
}

DensityMatrix from_spectrum(const Spectrum& lambda, Rng& rng) {
    const std::size_t d = lambda.dim();
    const ComplexMatrix u = haar_unitary(d, rng);
    Eigen::VectorXd diag(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) diag(static_cast<Eigen::Index>(i)) = lambda[i];
    ComplexMatrix m = u * diag.asDiagonal() * u.adjoint();
    m = (m + m.adjoint()).eval() * 0.5;
    return validate_density(m);
}

DensityMatrix from_spectrum(const Spectrum& lambda, const SeedStream& s) {
    Rng rng = s.engine();
    return from_spectrum(lambda, rng);
}

ComplexMatrix random_hermitian(std::size_t d, Rng& rng, bool zero_diagonal) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!zero_diagonal) h(i, i) = uni(rng);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double re = uni(rng);
            const double im = uni(rng);
            h(i, j) = Complex(re, im);
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

DensityMatrix perturb_density(const DensityMatrix& rho, double scale, Rng& rng) {
    const ComplexMatrix h = random_hermitian(rho.dim(), rng);
    const ComplexMatrix m = rho.matrix() + scale * h;
    const HermitianEigen eig = jacobi_eigh(m);
    Eigen::VectorXd lam(static_cast<Eigen::Index>(eig.values.size()));
    for (std::size_t i = 0; i < eig.values.size(); ++i) {
        lam(static_cast<Eigen::Index>(i)) = std::max(0.0, eig.values[i]);
    }
    lam /= lam.sum();
    ComplexMatrix out = eig.vectors * lam.asDiagonal() * eig.vectors.adjoint();
    out = (out + out.adjoint()).eval() * 0.5;
    return validate_density(out);
}

namespace {

// (A + A^H)/2 with Re, Im of A uniform on [0, 1), diagonal dropped.
ComplexMatrix walk_direction(std::size_t d, Rng& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double re = uni(rng);
            const double im = uni(rng);
            a(i, j) = Complex(re, im);
        }
    }
    ComplexMatrix h = (a + a.adjoint()) * 0.5;
    h.diagonal().setZero();
    return h;
}

WalkRecord record_for(const DensityMatrix& rho, std::size_t step, bool accepted, double scale) {
    WalkRecord r;
    r.step = step;
    r.accepted = accepted;
    r.scale = scale;
    r.c_l1 = c_l1(rho);
    r.s2 = tsallis2(rho);
    r.svn = von_neumann_entropy(rho);
    return r;
}

}  // namespace

Trajectory coherence_walk(const DensityMatrix& rho0, std::size_t steps, double strength,
                          const SeedStream& s) {
    constexpr int kMaxHalvings = 40;
    Rng rng = s.engine();
    Trajectory traj;
    traj.states.reserve(steps + 1);
    traj.step_records.reserve(steps + 1);
    traj.states.push_back(rho0);
    traj.step_records.push_back(record_for(rho0, 0, true, 0.0));

    for (std::size_t step = 1; step <= steps; ++step) {
        const ComplexMatrix h = walk_direction(rho0.dim(), rng);
        const ComplexMatrix& current = traj.states.back().matrix();
        double scale = static_cast<double>(step) * strength;
        bool accepted = false;
        for (int attempt = 0; attempt <= kMaxHalvings; ++attempt) {
            const ComplexMatrix candidate = current + scale * h;
            if (jacobi_eigh(candidate).values.back() >= 0.0) {
                traj.states.push_back(validate_density(candidate));
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if (!accepted) {
            traj.states.push_back(traj.states.back());
            scale = 0.0;
        }
        traj.step_records.push_back(record_for(traj.states.back(), step, accepted, scale));
    }
    return traj;
}

}  // namespace coherence
