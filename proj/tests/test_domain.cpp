// test_domain.cpp -- exact membership for open domains, bounding boxes,
// and fiber slice volumes (closed form and Monte Carlo).
#include <doctest.h>

#include "anisolat/domain.hpp"
#include "anisolat/lattice.hpp"

#include <cmath>
#include <stdexcept>

using namespace anisolat;

namespace {

Ellipsoid unit_disk() {
    return make_ellipsoid(Vec<QuadScalar>{QuadScalar(0), QuadScalar(0)},
                          identity_mat<QuadScalar>(2));
}

Mat<QuadScalar> shape2(long a, long b, long c, long dd) {
    Mat<QuadScalar> m(2, 2);
    m(0, 0) = QuadScalar(a);
    m(0, 1) = QuadScalar(b);
    m(1, 0) = QuadScalar(c);
    m(1, 1) = QuadScalar(dd);
    return m;
}

SubspaceData x_axis_2d() {
    return build_subspace({{QuadScalar(1), QuadScalar(0)}}, 2, 1);
}

SubspaceData half_slope_line() {
    return build_subspace({{QuadScalar(1), QuadScalar(Rat(1, 2))}}, 2, 1);
}

}  // namespace

TEST_CASE("domain constructors validate their inputs") {
    CHECK_THROWS_AS(make_ellipsoid(Vec<QuadScalar>{QuadScalar(0), QuadScalar(0)},
                                   shape2(1, 1, 0, 1)),
                    std::invalid_argument);  // not symmetric
    CHECK_THROWS_AS(make_ellipsoid(Vec<QuadScalar>{QuadScalar(0), QuadScalar(0)},
                                   shape2(1, 0, 0, -1)),
                    std::invalid_argument);  // not positive definite
    CHECK_THROWS_AS(make_ellipsoid(Vec<QuadScalar>{QuadScalar(0), QuadScalar(0)},
                                   shape2(0, 0, 0, 1)),
                    std::invalid_argument);  // singular
    CHECK_THROWS_AS(make_ellipsoid(Vec<QuadScalar>{QuadScalar(0)}, shape2(1, 0, 0, 1)),
                    std::invalid_argument);  // dimension mismatch

    CHECK_THROWS_AS(make_box(Vec<Rat>{Rat(0), Rat(0)}, Vec<Rat>{Rat(1), Rat(0)}),
                    std::invalid_argument);  // empty side
    CHECK_THROWS_AS(make_box(Vec<Rat>{Rat(0)}, Vec<Rat>{Rat(1), Rat(1)}),
                    std::invalid_argument);  // ragged

    // cross-term shape [[2,1],[1,2]] is positive definite
    CHECK_NOTHROW(make_ellipsoid(Vec<QuadScalar>{QuadScalar(0), QuadScalar(0)},
                                 shape2(2, 1, 1, 2)));
}

TEST_CASE("ellipsoid membership is exact and excludes the boundary") {
    Domain d = unit_disk();
    CHECK(contains(d, Vec<QuadScalar>{QuadScalar(0), QuadScalar(0)}) == Containment::inside);
    CHECK(contains(d, Vec<QuadScalar>{QuadScalar(1), QuadScalar(0)}) == Containment::outside);
    CHECK(contains(d, Vec<QuadScalar>{QuadScalar(Rat(999, 1000)), QuadScalar(0)}) ==
          Containment::inside);

    // irrational coordinates: (1/2, sqrt(2)/2) has |x|^2 = 3/4
    Vec<QuadScalar> inside_pt{QuadScalar(Rat(1, 2)), QuadScalar(Rat(0), Rat(1, 2), 2)};
    CHECK(contains(d, inside_pt) == Containment::inside);
    // (sqrt(2)/2, sqrt(2)/2) lands exactly on the boundary
    Vec<QuadScalar> boundary_pt{QuadScalar(Rat(0), Rat(1, 2), 2), QuadScalar(Rat(0), Rat(1, 2), 2)};
    CHECK(contains(d, boundary_pt) == Containment::outside);

    // cross terms: 2x^2 + 2xy + 2y^2 at (1/2, -1/2) is 1/2
    Domain skew = make_ellipsoid(Vec<QuadScalar>{QuadScalar(0), QuadScalar(0)},
                                 shape2(2, 1, 1, 2));
    CHECK(contains(skew, Vec<QuadScalar>{QuadScalar(Rat(1, 2)), QuadScalar(Rat(-1, 2))}) ==
          Containment::inside);
    CHECK(contains(skew, Vec<QuadScalar>{QuadScalar(1), QuadScalar(0)}) == Containment::outside);
}

TEST_CASE("box membership is open") {
    Domain d = make_box(Vec<Rat>{Rat(-1), Rat(-1)}, Vec<Rat>{Rat(1), Rat(1)});
    CHECK(contains(d, Vec<QuadScalar>{QuadScalar(0), QuadScalar(0)}) == Containment::inside);
    CHECK(contains(d, Vec<QuadScalar>{QuadScalar(1), QuadScalar(0)}) == Containment::outside);
    CHECK(contains(d, Vec<QuadScalar>{QuadScalar(-1), QuadScalar(0)}) == Containment::outside);
    CHECK(contains(d, Vec<QuadScalar>{QuadScalar(Rat(-999, 1000)), QuadScalar(0)}) ==
          Containment::inside);
}

TEST_CASE("oracle membership uses a tolerance band") {
    OracleDomain se =
        make_superellipsoid(Vec<Rat>{Rat(0), Rat(0)}, Vec<Rat>{Rat(1), Rat(1)}, 4, 1e-2);
    Domain d = se;
    CHECK(contains(d, Vec<QuadScalar>{QuadScalar(0), QuadScalar(0)}) == Containment::inside);
    CHECK(contains(d, Vec<QuadScalar>{QuadScalar(2), QuadScalar(0)}) == Containment::outside);
    // |0.84|^4 * 2 - 1 = -0.00425..., within the 1e-2 band
    CHECK(contains(d, Vec<QuadScalar>{QuadScalar(Rat(84, 100)), QuadScalar(Rat(84, 100))}) ==
          Containment::ambiguous);
    CHECK(smooth_boundary(d) == true);
    CHECK(slices_strictly_convex(d) == true);
    CHECK(domain_kind(d) == "superellipsoid");
}

TEST_CASE("bounding boxes contain the domain and are nearly tight") {
    SUBCASE("unit disk") {
        Box b = bounding_box(unit_disk());
        for (int i = 0; i < 2; ++i) {
            CHECK(b.upper[i] >= 1);
            CHECK(rat_to_double(b.upper[i]) < 1.0 + 1e-5);
            CHECK(b.lower[i] <= -1);
            CHECK(rat_to_double(b.lower[i]) > -1.0 - 1e-5);
        }
    }
    SUBCASE("axis-scaled ellipse x^2 + 4y^2 < 1") {
        Domain d = make_ellipsoid(Vec<QuadScalar>{QuadScalar(0), QuadScalar(0)},
                                  shape2(1, 0, 0, 4));
        Box b = bounding_box(d);
        CHECK(b.upper[0] >= 1);
        CHECK(rat_to_double(b.upper[0]) < 1.0 + 1e-5);
        CHECK(b.upper[1] >= Rat(1, 2));
        CHECK(rat_to_double(b.upper[1]) < 0.5 + 1e-5);
    }
    SUBCASE("boxes are their own bounding boxes") {
        Domain d = make_box(Vec<Rat>{Rat(-1), Rat(-3, 4)}, Vec<Rat>{Rat(1), Rat(3, 4)});
        Box b = bounding_box(d);
        CHECK(b.lower == Vec<Rat>{Rat(-1), Rat(-3, 4)});
        CHECK(b.upper == Vec<Rat>{Rat(1), Rat(3, 4)});
    }
}

TEST_CASE("unit ball volumes") {
    CHECK(unit_ball_volume(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(unit_ball_volume(2) == doctest::Approx(3.14159265358979324).epsilon(1e-14));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.18879020478639098).epsilon(1e-14));
    CHECK(unit_ball_volume(4) == doctest::Approx(4.93480220054467931).epsilon(1e-14));
}

TEST_CASE("closed-form slice volumes of the disk") {
    SUBCASE("fibers along the x-axis") {
        Ellipsoid e = unit_disk();
        SubspaceData s = x_axis_2d();
        // chord length through (m, 0) is 2 sqrt(1 - m^2)
        CHECK(slice_volume_ellipsoid(e, Vec<Rat>{Rat(0), Rat(0)}, s) ==
              doctest::Approx(2.0).epsilon(1e-13));
        CHECK(slice_volume_ellipsoid(e, Vec<Rat>{Rat(1, 2), Rat(0)}, s) ==
              doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
        // tangent and exterior fibers have exactly zero volume
        CHECK(slice_volume_ellipsoid(e, Vec<Rat>{Rat(1), Rat(0)}, s) == 0.0);
        CHECK(slice_volume_ellipsoid(e, Vec<Rat>{Rat(2), Rat(0)}, s) == 0.0);
    }
    SUBCASE("fibers transverse to the line of slope 1/2") {
        Ellipsoid e = unit_disk();
        SubspaceData s = half_slope_line();
        // gamma* = (2/5, 1/5) has |gamma*|^2 = 1/5; chord = 2 sqrt(4/5)
        CHECK(slice_volume_ellipsoid(e, Vec<Rat>{Rat(2, 5), Rat(1, 5)}, s) ==
              doctest::Approx(4.0 / std::sqrt(5.0)).epsilon(1e-13));
        CHECK(slice_volume_ellipsoid(e, Vec<Rat>{Rat(0), Rat(0)}, s) ==
              doctest::Approx(2.0).epsilon(1e-13));
    }
    SUBCASE("cross-term shape [[2,1],[1,2]]") {
        Ellipsoid e = make_ellipsoid(Vec<QuadScalar>{QuadScalar(0), QuadScalar(0)},
                                     shape2(2, 1, 1, 2));
        SubspaceData s = x_axis_2d();
        // restricted form in y on the fiber x = m: 2y^2 + 2my + 2m^2 < 1,
        // chord = sqrt(8 - 12 m^2) / 2
        CHECK(slice_volume_ellipsoid(e, Vec<Rat>{Rat(0), Rat(0)}, s) ==
              doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
        CHECK(slice_volume_ellipsoid(e, Vec<Rat>{Rat(1, 2), Rat(0)}, s) ==
              doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-13));
    }
    SUBCASE("full-dimensional slice for the trivial subspace") {
        Ellipsoid e = unit_disk();
        SubspaceData s = build_subspace({}, 2, 1);
        CHECK(slice_volume_ellipsoid(e, Vec<Rat>{Rat(0), Rat(0)}, s) ==
              doctest::Approx(3.14159265358979324).epsilon(1e-13));
    }
}

TEST_CASE("Monte Carlo slice volumes agree with closed forms") {
    SubspaceData s = half_slope_line();
    SUBCASE("disk chord through a dual point") {
        Domain d = unit_disk();
        Vec<Rat> gs{Rat(2, 5), Rat(1, 5)};
        double closed = 4.0 / std::sqrt(5.0);
        McEstimate mc = slice_volume_mc(d, gs, s, 200000, 20240901);
        CHECK(mc.samples == 200000);
        CHECK(mc.stderr_value > 0.0);
        CHECK(mc.stderr_value < 0.02);
        CHECK(std::fabs(mc.value - closed) <= 4.0 * mc.stderr_value);
    }
    SUBCASE("box chord has length 3 sqrt(5) / 4") {
        Domain d = make_box(Vec<Rat>{Rat(-1), Rat(-3, 4)}, Vec<Rat>{Rat(1), Rat(3, 4)});
        Vec<Rat> gs{Rat(0), Rat(0)};
        double closed = 3.0 * std::sqrt(5.0) / 4.0;
        McEstimate mc = slice_volume_mc(d, gs, s, 200000, 7);
        CHECK(std::fabs(mc.value - closed) <= 4.0 * mc.stderr_value);
    }
    SUBCASE("deterministic for a fixed seed") {
        Domain d = unit_disk();
        Vec<Rat> gs{Rat(0), Rat(0)};
        McEstimate a = slice_volume_mc(d, gs, s, 50000, 42);
        McEstimate b = slice_volume_mc(d, gs, s, 50000, 42);
        CHECK(a.value == b.value);
        CHECK(a.stderr_value == b.stderr_value);
        McEstimate c = slice_volume_mc(d, gs, s, 50000, 43);
        CHECK(a.value != c.value);
    }
}
