// test_asymptotics.cpp -- leading terms over fibers, predicted remainder
// exponents, eps sweeps, and the log-log remainder fit.
#include <doctest.h>

#include "anisolat/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace anisolat;

namespace {

Ellipsoid unit_disk() {
    return make_ellipsoid(Vec<QuadScalar>{QuadScalar(0), QuadScalar(0)},
                          identity_mat<QuadScalar>(2));
}

}  // namespace

TEST_CASE("leading term of the disk along the x-axis") {
    auto s = build_subspace({{QuadScalar(1), QuadScalar(0)}}, 2, 1);
    LeadingTerm l = leading_term(unit_disk(), s, Rat(1, 2));
    // only gamma* = 0 meets the open disk (fibers at x = +-1 are tangent);
    // eps^{-1} * chord(0) = 2 * 2
    CHECK(l.value == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(l.stderr_value == 0.0);
    CHECK(l.fibers == 1);
}

TEST_CASE("leading term of the disk along the slope-1/2 line") {
    auto s = build_subspace({{QuadScalar(1), QuadScalar(Rat(1, 2))}}, 2, 1);
    LeadingTerm l = leading_term(unit_disk(), s, Rat(1, 2));
    // fibers m = -2..2, chords 2 sqrt(1 - m^2/5), all over |Q| = sqrt(5)
    double expect = 2.0 *
                    (2.0 + 4.0 * std::sqrt(4.0 / 5.0) + 4.0 * std::sqrt(1.0 / 5.0)) /
                    std::sqrt(5.0);
    CHECK(l.value == doctest::Approx(expect).epsilon(1e-12));
    CHECK(l.value == doctest::Approx(6.588854381999831).epsilon(1e-12));
    CHECK(l.fibers == 5);
    CHECK(l.stderr_value == 0.0);
}

TEST_CASE("leading term with trivial rational part scales the full volume") {
    SUBCASE("irrational line over the disk") {
        auto s = build_subspace({{QuadScalar(1), QuadScalar::sqrt_of(2)}}, 2, 2);
        LeadingTerm l = leading_term(unit_disk(), s, Rat(1, 8));
        CHECK(l.value == doctest::Approx(8.0 * 3.14159265358979324).epsilon(1e-12));
        CHECK(l.fibers == 1);
    }
    SUBCASE("trivial subspace over a box") {
        auto s = build_subspace({}, 2, 1);
        Domain b = make_box(Vec<Rat>{Rat(-1), Rat(-3, 4)}, Vec<Rat>{Rat(1), Rat(3, 4)});
        LeadingTerm l = leading_term(b, s, Rat(1, 4));
        CHECK(l.value == 48.0);  // 16 * area 3, both exact in doubles
        CHECK(l.stderr_value == 0.0);
    }
    SUBCASE("oracle domains go through Monte Carlo") {
        auto s = build_subspace({}, 2, 1);
        OracleDomain se =
            make_superellipsoid(Vec<Rat>{Rat(0), Rat(0)}, Vec<Rat>{Rat(1), Rat(1)}, 4);
        LeadingTerm l = leading_term(Domain(se), s, Rat(1, 4), 400000, 20240901);
        // area of |x|^4 + |y|^4 < 1 via the gamma function
        double area = 4.0 * std::tgamma(1.25) * std::tgamma(1.25) / std::tgamma(1.5);
        CHECK(l.stderr_value > 0.0);
        CHECK(std::fabs(l.value - 16.0 * area) <= 4.0 * l.stderr_value);
    }
}

TEST_CASE("predicted remainder exponents") {
    auto x_axis = build_subspace({{QuadScalar(1), QuadScalar(0)}}, 2, 1);
    auto irr_line = build_subspace({{QuadScalar(1), QuadScalar::sqrt_of(2)}}, 2, 2);
    auto trivial = build_subspace({}, 2, 1);
    auto plane3 = build_subspace({{QuadScalar(1), QuadScalar(0), QuadScalar(0)},
                                  {QuadScalar(0), QuadScalar(1), QuadScalar::sqrt_of(2)}},
                                 3, 2);

    // p = r = q = 1: gain k = 1 either way, remainder O(1)
    CHECK(predicted_exponent(x_axis, false) == doctest::Approx(0.0));
    CHECK(predicted_exponent(x_axis, true) == doctest::Approx(0.0));
    // p = 1, r = 0, q = 1: k = 1/2, remainder O(eps^{-1/2})
    CHECK(predicted_exponent(irr_line, false) == doctest::Approx(-0.5));
    CHECK(predicted_exponent(irr_line, true) == doctest::Approx(-0.5));
    // p = 0, q = 2: convex slices give the classical k = 2q/(q+1) = 4/3
    CHECK(predicted_exponent(trivial, false) == doctest::Approx(-1.0));
    CHECK(predicted_exponent(trivial, true) == doctest::Approx(-2.0 / 3.0));
    // p = 2, r = 1, q = 1: k = 1/2 on both branches
    CHECK(predicted_exponent(plane3, false) == doctest::Approx(-0.5));
    CHECK(predicted_exponent(plane3, true) == doctest::Approx(-0.5));
}

TEST_CASE("sweep records counts, leading terms, and remainders") {
    auto s = build_subspace({{QuadScalar(1), QuadScalar(0)}}, 2, 1);
    auto records = sweep(unit_disk(), s, {Rat(1, 2)});
    REQUIRE(records.size() == 1);
    const SweepRecord& rec = records[0];
    CHECK(rec.eps == Rat(1, 2));
    CHECK(!rec.skipped);
    CHECK(rec.count == 3);
    CHECK(rec.leading == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(rec.remainder == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(rec.predicted_exponent == doctest::Approx(0.0));
}

TEST_CASE("sweep marks budget overruns as skipped") {
    auto s = build_subspace({{QuadScalar(1), QuadScalar(Rat(1, 2))}}, 2, 1);
    auto records = sweep(unit_disk(), s, {Rat(1, 2), Rat(1, 4096)}, 1000);
    REQUIRE(records.size() == 2);
    CHECK(!records[0].skipped);
    CHECK(records[0].count == 7);
    CHECK(records[1].skipped);
}

TEST_CASE("remainder fit recovers a synthetic power law") {
    std::vector<SweepRecord> records;
    for (int j = 1; j <= 6; ++j) {
        SweepRecord r;
        r.eps = Rat(1, 1L << j);
        r.remainder = 3.0 * std::pow(2.0, 0.5 * j);  // 3 (1/eps)^{1/2}
        records.push_back(r);
    }
    FitResult f = fit_remainder(records);
    CHECK(f.slope == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
    CHECK(f.stderr_slope == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(f.points == 6);
    CHECK(f.dropped == 0);
}

TEST_CASE("degenerate fits are rejected") {
    std::vector<SweepRecord> records;
    SweepRecord a;
    a.eps = Rat(1, 2);
    a.remainder = 1.0;
    SweepRecord b;
    b.eps = Rat(1, 4);
    b.remainder = 2.0;
    records = {a, b};
    CHECK_THROWS_AS(fit_remainder(records), std::invalid_argument);

    // zero remainders and skipped rows are dropped, not fitted
    SweepRecord zero;
    zero.eps = Rat(1, 8);
    zero.remainder = 0.0;
    SweepRecord skip;
    skip.eps = Rat(1, 16);
    skip.skipped = true;
    std::vector<SweepRecord> sparse = {a, b, zero, skip};
    CHECK_THROWS_AS(fit_remainder(sparse), std::invalid_argument);
}

TEST_CASE("fitted slope of the irrational line stays under the predicted gain") {
    auto s = build_subspace({{QuadScalar(1), QuadScalar::sqrt_of(2)}}, 2, 2);
    std::vector<Rat> grid;
    for (int j = 3; j <= 6; ++j) grid.push_back(Rat(1, 1L << j));
    auto records = sweep(unit_disk(), s, grid);
    FitResult f = fit_remainder(records);
    CHECK(f.points + f.dropped == 4);
    // remainder is O(eps^{-1/2}): the fitted growth rate stays below 0.65
    CHECK(f.slope <= 0.65);
    CHECK(std::fabs(f.slope) < 2.0);
}
