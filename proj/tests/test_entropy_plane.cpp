#include <doctest.h>

#include <cmath>

#include "coherence/entropy_plane.hpp"
#include "support.hpp"

using namespace coherence;

namespace {

constexpr double kH3414 = 0.811278124459132863909695792039;
constexpr double kEurX = 1.79248125036057809072686947197;

}  // namespace

TEST_CASE("family validity by dimension") {
    CHECK_THROWS_AS(CurveFamily(FamilyTag::LowerIntermediate, 3), CoherenceError);
    CHECK_THROWS_AS(CurveFamily(FamilyTag::MiddleIntermediate, 2), CoherenceError);
    CHECK_NOTHROW(CurveFamily(FamilyTag::QubitLower, 2));
    CHECK(CurveFamily(FamilyTag::LowerIntermediate, 6).name() == "lower_intermediate(3)");
}

TEST_CASE("family spectra at their ends") {
    const CurveFamily up(FamilyTag::UpperDegenerate, 4);
    const Spectrum peak = family_spectrum(up, 1.0);
    CHECK(peak[0] == doctest::Approx(1.0));
    CHECK(peak.rank() == 1);
    const Spectrum flat = family_spectrum(up, 0.0);
    for (double v : flat.values()) CHECK(v == doctest::Approx(0.25));
    CHECK(flat.rank() == 4);

    const Spectrum q = family_spectrum(CurveFamily(FamilyTag::QubitLower, 4), 0.0);
    CHECK(q[0] == doctest::Approx(0.5));
    CHECK(q[1] == doctest::Approx(0.5));
    CHECK(q.rank() == 2);
    CHECK_THROWS_AS(family_spectrum(up, 1.5), CoherenceError);
}

TEST_CASE("family spectra satisfy their structural constraints") {
    for (std::size_t d = 4; d <= 8; ++d) {
        for (int i = 0; i <= 20; ++i) {
            const double t = i / 20.0;
            const Spectrum li = family_spectrum(CurveFamily(FamilyTag::LowerIntermediate, d), t);
            const std::size_t m = d - 3;
            for (std::size_t j = 1; j <= m; ++j) CHECK(li[j] == doctest::Approx(li[0]));
            CHECK(li[m + 1] <= li[0] + 1e-15);
            const Spectrum mi = family_spectrum(CurveFamily(FamilyTag::MiddleIntermediate, d), t);
            for (std::size_t j = 2; j <= m + 1; ++j) CHECK(mi[j] == doctest::Approx(mi[1]));
            for (std::size_t j = m + 2; j < d; ++j) CHECK(mi[j] == 0.0);
            const Spectrum lu = family_spectrum(CurveFamily(FamilyTag::LowerUpper, d), t);
            for (std::size_t j = 1; j + 1 < d; ++j) CHECK(lu[j] == doctest::Approx(lu[0]));
        }
    }
}

TEST_CASE("plane points") {
    const PlanePoint pure = plane_point(Spectrum::from_values({1, 0, 0, 0}));
    CHECK(pure.s2 == 0.0);
    CHECK(pure.svn == 0.0);
    const PlanePoint mm = plane_point(Spectrum::from_values({0.25, 0.25, 0.25, 0.25}));
    CHECK(mm.s2 == doctest::Approx(0.75));
    CHECK(mm.svn == doctest::Approx(2.0));
    const PlanePoint mid = plane_point(Spectrum::from_values({0.75, 0.25, 0, 0}));
    CHECK(mid.s2 == doctest::Approx(0.375));
    CHECK(mid.svn == doctest::Approx(kH3414).epsilon(1e-12));
}

TEST_CASE("boundary samples cover t from 0 to 1") {
    const auto s = boundary_samples(CurveFamily(FamilyTag::UpperDegenerate, 5), 11);
    REQUIRE(s.size() == 11);
    CHECK(s.front().t == 0.0);
    CHECK(s.back().t == 1.0);
    CHECK(s.front().point.svn == doctest::Approx(std::log2(5.0)));
    CHECK(s.back().point.svn == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(boundary_samples(CurveFamily(FamilyTag::UpperDegenerate, 5), 1), CoherenceError);
}

TEST_CASE("polyline interpolation") {
    const auto s = boundary_samples(CurveFamily(FamilyTag::QubitLower, 4), 101);
    CHECK(!interpolate_svn(s, 0.6).has_value());
    CHECK(interpolate_svn(s, 0.5).value() == doctest::Approx(1.0));
    CHECK(interpolate_svn(s, 0.0).value() == doctest::Approx(0.0).epsilon(1e-15));
    const double mid = interpolate_svn(s, 0.375).value();
    CHECK(mid == doctest::Approx(kH3414).epsilon(1e-3));
}

TEST_CASE("eur curve points") {
    for (std::size_t d = 2; d <= 8; ++d) {
        const auto [x0, y0] = eur_curve_point(d, 1.0);
        CHECK(x0 == 0.0);
        CHECK(y0 == 0.0);
        const auto [x1, y1] = eur_curve_point(d, 1.0 / static_cast<double>(d));
        CHECK(x1 == doctest::Approx(std::log2(static_cast<double>(d))));
        CHECK(y1 == doctest::Approx(1.0 - 1.0 / static_cast<double>(d)));
    }
    const auto [x, y] = eur_curve_point(4, 0.5);
    CHECK(x == doctest::Approx(kEurX).epsilon(1e-12));
    CHECK(y == doctest::Approx(0.5));
    const PlanePoint cross = plane_point(Spectrum::from_values({0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6}));
    CHECK(x == doctest::Approx(cross.svn).epsilon(1e-12));
    CHECK_THROWS_AS(eur_curve_point(4, 0.1), CoherenceError);
    CHECK_THROWS_AS(eur_curve_point(1, 1.0), CoherenceError);
}

TEST_CASE("entropy lambda gap") {
    CHECK(entropy_lambda_gap(testing::plus_state()) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(entropy_lambda_gap(DensityMatrix::maximally_mixed(4)) == doctest::Approx(1.25));
    CHECK(entropy_lambda_gap(testing::qubit_quarter()) == doctest::Approx(kH3414 - 0.25).epsilon(1e-12));
}

TEST_CASE("measurement bases and probabilities") {
    Rng rng = SeedStream{61, 0}.engine();
    const DensityMatrix rho = testing::random_state(4, 4, rng);
    const RealVector z = measurement_probs(rho, MeasurementBasis::computational(4));
    for (std::size_t i = 0; i < 4; ++i) CHECK(z[i] == doctest::Approx(rho(i, i).real()));
    CHECK(shannon_entropy(z) == doctest::Approx(von_neumann_entropy(dephase(rho))).epsilon(1e-9));

    for (double p : measurement_probs(DensityMatrix::maximally_mixed(5), MeasurementBasis::fourier(5))) {
        CHECK(p == doctest::Approx(0.2));
    }
    const RealVector x = measurement_probs(testing::plus_state(), MeasurementBasis::fourier(2));
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(0.0).epsilon(1e-15));

    CHECK(max_overlap(MeasurementBasis::computational(3), MeasurementBasis::fourier(3)) ==
          doctest::Approx(1.0 / std::sqrt(3.0)));
    CHECK_NOTHROW(MeasurementBasis::haar(6, rng));
    CHECK_THROWS_AS(MeasurementBasis(ComplexMatrix::Ones(2, 2), "bad"), CoherenceError);
    CHECK_THROWS_AS(measurement_probs(rho, MeasurementBasis::computational(3)), CoherenceError);
}

TEST_CASE("refined EUR on the maximally mixed qubit") {
    const std::vector<MeasurementBasis> bases{MeasurementBasis::computational(2), MeasurementBasis::fourier(2)};
    const EurReport r = refined_eur_report(DensityMatrix::maximally_mixed(2), bases);
    CHECK(r.lhs == doctest::Approx(2.0));
    CHECK(r.refined_rhs == doctest::Approx(1.0));
    REQUIRE(r.mu_rhs.has_value());
    CHECK(*r.mu_rhs == doctest::Approx(1.0));
    CHECK(r.holds);
    CHECK_FALSE(r.refined_tighter);
}

TEST_CASE("refined EUR on a basis state") {
    Eigen::VectorXcd zero(2);
    zero << 1.0, 0.0;
    const std::vector<MeasurementBasis> bases{MeasurementBasis::computational(2), MeasurementBasis::fourier(2)};
    const EurReport r = refined_eur_report(DensityMatrix::pure(zero), bases);
    CHECK(r.entropies[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r.entropies[1] == doctest::Approx(1.0));
    CHECK(r.lambda_max[0] == doctest::Approx(1.0));
    CHECK(r.lambda_max[1] == doctest::Approx(0.5));
    CHECK(r.refined_rhs == doctest::Approx(0.5));
    CHECK(*r.mu_rhs == doctest::Approx(1.0));
    CHECK(r.holds);
    CHECK_FALSE(r.refined_tighter);
}

TEST_CASE("refined EUR with a repeated basis") {
    Rng rng = SeedStream{62, 0}.engine();
    const DensityMatrix rho = testing::random_state(3, 3, rng);
    const std::vector<MeasurementBasis> same{MeasurementBasis::fourier(3), MeasurementBasis::fourier(3)};
    const EurReport r = refined_eur_report(rho, same);
    CHECK(*r.mu_rhs == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r.refined_rhs >= 0.0);
    CHECK(r.refined_tighter == (r.lambda_max[0] < 1.0));
}

TEST_CASE("refined EUR input errors and multi-basis reports") {
    const DensityMatrix rho = DensityMatrix::maximally_mixed(3);
    CHECK_THROWS_AS(refined_eur_report(rho, {MeasurementBasis::computational(3)}), CoherenceError);
    const std::vector<MeasurementBasis> three{MeasurementBasis::computational(3), MeasurementBasis::fourier(3),
                                              MeasurementBasis::computational(3)};
    CHECK_THROWS_AS(refined_eur_report(rho, three, {}, 0), CoherenceError);
    const EurReport r = refined_eur_report(rho, three, {}, 2);
    CHECK_FALSE(r.mu_rhs.has_value());
    CHECK(r.refined_rhs == doctest::Approx(2.0));
    CHECK(r.refined_rhs_root == doctest::Approx(3.0 * std::sqrt(2.0 / 3.0)));
}

TEST_CASE("random EUR draws hold") {
    Rng rng = SeedStream{63, 0}.engine();
    for (int t = 0; t < 3000; ++t) {
        const std::size_t d = 2 + static_cast<std::size_t>(t % 5);
        const DensityMatrix rho = testing::random_state(d, 1 + static_cast<std::size_t>(t) % d, rng);
        const std::vector<MeasurementBasis> b{MeasurementBasis::haar(d, rng), MeasurementBasis::haar(d, rng)};
        CHECK(refined_eur_report(rho, b).holds);
    }
}
