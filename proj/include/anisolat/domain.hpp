// domain.hpp -- bounded open domains: exact membership, bounding boxes,
// and volumes of slices by the affine fibers gamma* + V_perp.
#pragma once

#include "anisolat/lattice.hpp"
#include "anisolat/quad_scalar.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <variant>

namespace anisolat {

// Open set {x : (x-c)^T M (x-c) < 1} with M symmetric positive definite.
struct Ellipsoid {
    Vec<QuadScalar> center;
    Mat<QuadScalar> shape;
};

// Open axis-aligned box (lower, upper), lower_i < upper_i.
struct Box {
    Vec<Rat> lower;
    Vec<Rat> upper;
};

// Black-box domain {x : level(x) < 0} evaluated in doubles.  Points with
// |level| <= tolerance are flagged ambiguous and excluded from counts.
// Construction parameters are retained when known so the domain can be
// serialized and rebuilt.
struct OracleDomain {
    std::function<double(const std::vector<double>&)> level;
    Box bbox;
    bool smooth = false;
    bool slicewise_strictly_convex = false;
    double tolerance = 1e-12;
    std::string kind = "oracle";
    long power = 0;       // superellipsoid exponent, 0 for generic oracles
    Vec<Rat> center;      // superellipsoid construction data
    Vec<Rat> semi_axes;
};

using Domain = std::variant<Ellipsoid, Box, OracleDomain>;

enum class Containment { inside, outside, ambiguous };

// Validates shapes: square symmetric positive definite matrix, matching
// dimensions.  Throws std::invalid_argument otherwise.
Ellipsoid make_ellipsoid(Vec<QuadScalar> center, Mat<QuadScalar> shape);
Box make_box(Vec<Rat> lower, Vec<Rat> upper);
OracleDomain make_superellipsoid(const Vec<Rat>& center, const Vec<Rat>& semi_axes, long power,
                                 double tolerance = 1e-12);

std::size_t dimension(const Domain& d);

// Exact for Ellipsoid and Box (boundary excluded); tolerance band for
// oracle domains.
Containment contains(const Domain& d, const Vec<QuadScalar>& x);

// Axis-aligned rational box containing the domain.
Box bounding_box(const Domain& d);

bool smooth_boundary(const Domain& d);
bool slices_strictly_convex(const Domain& d);
std::string domain_kind(const Domain& d);

// Volume of the unit ball in R^m.
double unit_ball_volume(std::size_t m);

// (n-r)-volume of E intersect (gamma* + V_perp), closed form: the restricted
// quadratic form is minimized exactly over the fiber, then the slice is an
// ellipsoid in the fiber with known Gram determinants.
double slice_volume_ellipsoid(const Ellipsoid& e, const Vec<Rat>& gamma_star,
                              const SubspaceData& s);

struct McEstimate {
    double value = 0.0;
    double stderr_value = 0.0;
    long long samples = 0;
};

// Hit-or-miss Monte Carlo slice volume over an orthonormalized basis of
// V_perp, sampling a box that contains the slice (unbiased).  Deterministic
// for fixed seed and sample count.
McEstimate slice_volume_mc(const Domain& d, const Vec<Rat>& gamma_star, const SubspaceData& s,
                           long long samples, std::uint64_t seed);

}  // namespace anisolat
