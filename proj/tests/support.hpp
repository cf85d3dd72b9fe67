#pragma once

#include <Eigen/Dense>

#include "coherence/hermitian.hpp"
#include "coherence/state_gen.hpp"

namespace testing {

using coherence::ComplexMatrix;
using coherence::DensityMatrix;

inline DensityMatrix qubit_quarter() {
    ComplexMatrix m(2, 2);
    m << 0.5, 0.25, 0.25, 0.5;
    return coherence::validate_density(m);
}

inline DensityMatrix plus_state() {
    Eigen::VectorXcd psi(2);
    psi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return DensityMatrix::pure(psi);
}

inline DensityMatrix random_state(std::size_t d, std::size_t rank, coherence::Rng& rng) {
    const auto method = rng() % 2 == 0 ? coherence::DensityMethod::Ginibre : coherence::DensityMethod::SpectrumHaar;
    return coherence::random_density(d, rank, method, rng);
}

// Independent eigenvalues from Eigen, ascending.
inline Eigen::VectorXd reference_eigenvalues(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
    return es.eigenvalues();
}

}  // namespace testing
