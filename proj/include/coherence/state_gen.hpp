#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "coherence/hermitian.hpp"

namespace coherence {

// (master_seed, stream_index) fully determines the generator state.
struct SeedStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    std::mt19937_64 engine() const;
    SeedStream substream(std::uint64_t salt) const;
};

using Rng = std::mt19937_64;

enum class DensityMethod { Ginibre, SpectrumHaar };

DensityMethod parse_density_method(std::string_view name);
std::string_view to_string(DensityMethod m);

ComplexMatrix ginibre_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

ComplexMatrix haar_unitary(std::size_t d, Rng& rng);
ComplexMatrix haar_unitary(std::size_t d, const SeedStream& s);

// Uniform point on the probability simplex restricted to the first `rank`
// coordinates, sorted descending.
RealVector random_simplex(std::size_t d, std::size_t rank, Rng& rng);

DensityMatrix random_density(std::size_t d, std::size_t rank, DensityMethod method, Rng& rng);
DensityMatrix random_density(std::size_t d, std::size_t rank, DensityMethod method,
                             const SeedStream& s);

DensityMatrix from_spectrum(const Spectrum& lambda, Rng& rng);
DensityMatrix from_spectrum(const Spectrum& lambda, const SeedStream& s);

// Random Hermitian with i.i.d. uniform[-1, 1] real and imaginary parts
// off the diagonal and uniform[-1, 1] on the diagonal.
ComplexMatrix random_hermitian(std::size_t d, Rng& rng, bool zero_diagonal = false);

// rho + scale * H for random Hermitian H, projected back onto the density
// matrices by clipping negative eigenvalues and renormalizing the trace.
DensityMatrix perturb_density(const DensityMatrix& rho, double scale, Rng& rng);

struct WalkRecord {
    std::size_t step = 0;
    bool accepted = false;
    double scale = 0.0;
    double c_l1 = 0.0;
    double s2 = 0.0;
    double svn = 0.0;
};

struct Trajectory {
    std::vector<DensityMatrix> states;  // states[0] is the initial state
    std::vector<WalkRecord> step_records;
};

// Adds the zero-diagonal part of (A + A^H)/2, Re and Im of A uniform on
// [0, 1), scaled by step * strength, halving up to 40 times until the
// result stays positive semidefinite; a step that never does is a no-op.
// Entropies are recorded in bits.
Trajectory coherence_walk(const DensityMatrix& rho0, std::size_t steps, double strength,
                          const SeedStream& s);

}  // namespace coherence
