#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coherence/hermitian.hpp"
#include "coherence/measures.hpp"
#include "coherence/state_gen.hpp"

namespace coherence {

enum class FamilyTag { QubitLower, LowerIntermediate, LowerUpper, MiddleIntermediate, UpperDegenerate };

inline constexpr FamilyTag kAllFamilies[] = {FamilyTag::QubitLower, FamilyTag::LowerIntermediate,
                                             FamilyTag::LowerUpper, FamilyTag::MiddleIntermediate,
                                             FamilyTag::UpperDegenerate};

std::string_view to_string(FamilyTag tag);

// One-parameter eigenvalue family. The intermediate families carry
// m = n = d - 3 and need d >= 4; the others need d >= 2.
class CurveFamily {
public:
    CurveFamily(FamilyTag tag, std::size_t dim);

    FamilyTag tag() const noexcept { return tag_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t order() const noexcept { return dim_ >= 3 ? dim_ - 3 : 0; }  // m or n
    std::string name() const;

    static bool valid_for(FamilyTag tag, std::size_t dim);

private:
    FamilyTag tag_;
    std::size_t dim_;
};

// t = 0 is the most uniform end of the family, t = 1 the most peaked.
Spectrum family_spectrum(const CurveFamily& f, double t);

struct PlanePoint {
    double s2 = 0.0;
    double svn = 0.0;
};

PlanePoint plane_point(const Spectrum& lambda, const EntropyConfig& cfg = {});

struct BoundarySample {
    double t = 0.0;
    PlanePoint point;
};

std::vector<BoundarySample> boundary_samples(const CurveFamily& f, std::size_t count,
                                             const EntropyConfig& cfg = {});

// Linear interpolation of S_vN at the given S_2 along a boundary polyline
// (samples need not be sorted). Empty when s2 lies outside its S_2 range.
std::optional<double> interpolate_svn(const std::vector<BoundarySample>& curve, double s2);

// x = -[a log a + (1-a) log((1-a)/(d-1))], y = 1 - a, for a in [1/d, 1].
std::pair<double, double> eur_curve_point(std::size_t d, double a, const EntropyConfig& cfg = {});

// S_vN(rho) - (1 - lambda_max(rho)).
double entropy_lambda_gap(const DensityMatrix& rho, const EntropyConfig& cfg = {});

class MeasurementBasis {
public:
    // Columns of `vectors` are the basis vectors; Gram matrix must be within
    // tol of the identity.
    MeasurementBasis(ComplexMatrix vectors, std::string label, double tol = 1e-8);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(vectors_.rows()); }
    const ComplexMatrix& vectors() const noexcept { return vectors_; }
    const std::string& label() const noexcept { return label_; }

    static MeasurementBasis computational(std::size_t d);
    static MeasurementBasis fourier(std::size_t d);
    static MeasurementBasis haar(std::size_t d, Rng& rng);

private:
    ComplexMatrix vectors_;
    std::string label_;
};

RealVector measurement_probs(const DensityMatrix& rho, const MeasurementBasis& basis);

struct EurReport {
    std::vector<std::string> labels;
    RealVector entropies;
    RealVector lambda_max;
    double lhs = 0.0;
    double refined_rhs = 0.0;
    std::optional<double> mu_rhs;  // exactly two bases only
    double refined_rhs_root = 0.0; // sum_j (1 - lambda_max^j)^(1/root_order)
    unsigned root_order = 1;
    bool holds = false;
    bool refined_tighter = false;
};

EurReport refined_eur_report(const DensityMatrix& rho, const std::vector<MeasurementBasis>& bases,
                             const EntropyConfig& cfg = {}, unsigned root_order = 1);

// max_{i,k} |<x_i|z_k>|
double max_overlap(const MeasurementBasis& x, const MeasurementBasis& z);

}  // namespace coherence
