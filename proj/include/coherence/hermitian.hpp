#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace coherence {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = std::vector<double>;

enum class ErrorCode {
    NotSquare,
    NotFinite,
    NotHermitian,
    NotPSD,
    TraceZero,
    ConvergenceFailure,
    InvalidSpectrum,
    InvalidRank,
    InvalidK,
    NotNormalized,
    SingularSupport,
    LengthMismatch,
    DimensionTooSmall,
    DimMismatch,
    FamilyInvalidForDim,
    OutOfRange,
    TooFewBases,
    InvalidBasis,
    ParseError,
};

const char* to_string(ErrorCode code);

class CoherenceError : public std::runtime_error {
public:
    CoherenceError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline constexpr double kDefaultDensityTol = 1e-10;

// Eigenvalues sorted descending, clamped into [0, 1], summing to 1.
class Spectrum {
public:
    // Values in [-1e-10, 0) are clamped to zero and the vector renormalized.
    // Throws InvalidSpectrum when entries fall outside [-1e-10, 1 + 1e-10]
    // or the sum misses 1 by more than 1e-9.
    static Spectrum from_values(RealVector values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t dim() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double max() const { return values_.front(); }
    double min() const { return values_.back(); }
    std::size_t rank(double eps = 1e-12) const;

private:
    explicit Spectrum(RealVector v) : values_(std::move(v)) {}
    RealVector values_;
};

// Hermitian, positive semidefinite, unit-trace matrix. Only obtainable
// through validate_density (or helpers that call it), so every instance
// satisfies the invariants.
class DensityMatrix {
public:
    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    RealVector diagonal() const;
    Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    static DensityMatrix maximally_mixed(std::size_t d);
    static DensityMatrix diagonal_state(std::span<const double> p);
    static DensityMatrix pure(const Eigen::VectorXcd& psi);

private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;

    friend DensityMatrix validate_density(const ComplexMatrix&, double);
    friend DensityMatrix dephase(const DensityMatrix&);
};

struct EigenDecomposition {
    Spectrum spectrum;
    ComplexMatrix eigenvectors;  // columns follow spectrum order
};

// Raw output of the Jacobi solver for any Hermitian input: eigenvalues
// descending, unclamped.
struct HermitianEigen {
    RealVector values;
    ComplexMatrix vectors;
};

struct JacobiOptions {
    double off_tol = 1e-12;
    int max_sweeps = 100;
};

// Cyclic complex Jacobi. Deterministic: fixed (p, q) sweep order.
HermitianEigen jacobi_eigh(const ComplexMatrix& a, const JacobiOptions& opts = {});

double max_hermitian_defect(const ComplexMatrix& m);

DensityMatrix validate_density(const ComplexMatrix& m, double tol = kDefaultDensityTol);

EigenDecomposition eigh(const DensityMatrix& rho);

DensityMatrix dephase(const DensityMatrix& rho);

// max_ij |rho_ij - dephase(rho)_ij|, i.e. the largest off-diagonal modulus.
double max_offdiagonal(const ComplexMatrix& m);

}  // namespace coherence
