#include <doctest.h>

#include <algorithm>

#include "coherence/majorization.hpp"
#include "coherence/measures.hpp"
#include "support.hpp"

using namespace coherence;

namespace {

RealVector random_probability(std::size_t d, Rng& rng) {
    std::uniform_int_distribution<std::size_t> rank(1, d);
    return random_simplex(d, rank(rng), rng);
}

}  // namespace

TEST_CASE("majorizes examples") {
    const RealVector p{0.5, 0.3, 0.2};
    const RealVector q{0.4, 0.35, 0.25};
    CHECK(majorizes(p, q, MajorizationMode::Strong));
    CHECK_FALSE(majorizes(q, p, MajorizationMode::Strong));
    CHECK_FALSE(majorizes(RealVector{0.5, 0.5}, RealVector{0.7, 0.3}, MajorizationMode::Strong));
    CHECK(majorizes(p, p, MajorizationMode::Strong));
    CHECK(majorizes(RealVector{0.2, 0.5, 0.3}, q, MajorizationMode::Strong));
}

TEST_CASE("strong mode requires equal totals, weak mode does not") {
    const RealVector p{0.6, 0.5};
    const RealVector q{0.5, 0.5};
    CHECK_FALSE(majorizes(p, q, MajorizationMode::Strong));
    CHECK(majorizes(p, q, MajorizationMode::Weak));
    CHECK_FALSE(majorizes(RealVector{0.6, 0.3}, q, MajorizationMode::Weak));
}

TEST_CASE("majorizes input errors") {
    CHECK_THROWS_AS(majorizes(RealVector{1.0}, RealVector{0.5, 0.5}, MajorizationMode::Strong), CoherenceError);
    CHECK_THROWS_AS(majorizes(RealVector{std::nan(""), 1.0}, RealVector{0.5, 0.5}, MajorizationMode::Weak),
                    CoherenceError);
}

TEST_CASE("majorization order properties on random triples") {
    Rng rng = SeedStream{41, 0}.engine();
    for (int t = 0; t < 3000; ++t) {
        const std::size_t d = 2 + static_cast<std::size_t>(t % 5);
        const RealVector a = random_probability(d, rng);
        const RealVector b = random_probability(d, rng);
        const RealVector c = random_probability(d, rng);
        CHECK(majorizes(a, a, MajorizationMode::Strong));
        if (majorizes(a, b, MajorizationMode::Strong, 0.0) && majorizes(b, a, MajorizationMode::Strong, 0.0)) {
            for (std::size_t i = 0; i < d; ++i) CHECK(a[i] == doctest::Approx(b[i]));
        }
        if (majorizes(a, b, MajorizationMode::Strong, 0.0) && majorizes(b, c, MajorizationMode::Strong, 0.0)) {
            CHECK(majorizes(a, c, MajorizationMode::Strong));
        }
    }
}

TEST_CASE("worst partial sum margin") {
    const PartialSumMargin m = worst_partial_sum_margin(RealVector{0.5, 0.3, 0.2}, RealVector{0.4, 0.35, 0.25});
    CHECK(m.margin == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(m.k == 3);
    const PartialSumMargin n = worst_partial_sum_margin(RealVector{0.5, 0.5}, RealVector{0.7, 0.3});
    CHECK(n.margin == doctest::Approx(-0.2));
    CHECK(n.k == 1);
}

TEST_CASE("Schur-Horn report on a diagonal state") {
    const RealVector p{0.1, 0.6, 0.3};
    const MajorizationReport r = schur_horn_report(DensityMatrix::diagonal_state(p));
    CHECK(r.plain_ok);
    CHECK(r.squared_ok);
    CHECK(r.worst_margin_plain == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r.worst_margin_squared == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("Schur-Horn report on the plus state") {
    const MajorizationReport r = schur_horn_report(testing::plus_state());
    CHECK(r.plain_ok);
    CHECK(r.squared_ok);
    CHECK(r.spectrum[0] - r.diagonal[0] == doctest::Approx(0.5));
    CHECK(r.worst_margin_plain == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.k_at_worst == 2);
    // squared: (1, 0) against (0.25, 0.25) gives partial margins 0.75 then 0.5
    CHECK(r.spectrum[0] * r.spectrum[0] - r.diagonal[0] * r.diagonal[0] == doctest::Approx(0.75));
    CHECK(r.worst_margin_squared == doctest::Approx(0.5));
    CHECK(r.k_at_worst_squared == 2);
}

TEST_CASE("Schur-Horn holds on random states and implies the entropy order") {
    Rng rng = SeedStream{42, 0}.engine();
    for (int t = 0; t < 5000; ++t) {
        const std::size_t d = 2 + static_cast<std::size_t>(t % 7);
        std::uniform_int_distribution<std::size_t> rank(1, d);
        DensityMatrix rho = testing::random_state(d, rank(rng), rng);
        if (t % 2 == 1) rho = perturb_density(rho, 1e-3, rng);
        const MajorizationReport r = schur_horn_report(rho, 1e-10);
        CHECK(r.plain_ok);
        CHECK(r.squared_ok);
        if (majorizes(r.spectrum, r.diagonal, MajorizationMode::Strong)) {
            CHECK(shannon_entropy(r.diagonal) >= shannon_entropy(r.spectrum) - 1e-9);
        }
    }
}

TEST_CASE("Gil indices follow the literal formula") {
    const RealVector g = gil_indices(Spectrum::from_values({0.5, 0.3, 0.2}));
    REQUIRE(g.size() == 2);
    CHECK(g[0] == doctest::Approx(0.6));
    CHECK(g[1] == doctest::Approx(0.4));

    for (double v : gil_indices(Spectrum::from_values({1, 0, 0, 0}))) CHECK(v == doctest::Approx(1.0));

    const RealVector mm = gil_indices(Spectrum::from_values({0.25, 0.25, 0.25, 0.25}));
    REQUIRE(mm.size() == 3);
    CHECK(mm[0] == doctest::Approx(0.5));
    CHECK(mm[1] == doctest::Approx(0.25));
    CHECK(mm[2] == doctest::Approx(0.0).epsilon(1e-15));

    CHECK_THROWS_AS(gil_indices(Spectrum::from_values({1.0})), CoherenceError);
}

TEST_CASE("Gil report verdicts") {
    const RealVector p{0.2, 0.5, 0.3};
    const GilReport diag = gil_report(DensityMatrix::diagonal_state(p));
    CHECK(diag.verdict == GilVerdict::ForwardHolds);
    for (double x : diag.differences) CHECK(x == doctest::Approx(0.0).epsilon(1e-15));

    const GilReport plus = gil_report(testing::plus_state());
    REQUIRE(plus.differences.size() == 1);
    CHECK(plus.spectrum_gil[0] == doctest::Approx(1.0));
    CHECK(plus.diagonal_gil[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(plus.differences[0] == doctest::Approx(-1.0));
    CHECK(plus.verdict == GilVerdict::ReverseHolds);
    CHECK(to_string(GilVerdict::Mixed) == "mixed");
}
