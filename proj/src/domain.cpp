#include "anisolat/domain.hpp"

#include <cmath>
#include <stdexcept>

namespace anisolat {

namespace {

// SplitMix64, used to derive independent per-chunk streams from one seed.
std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

std::vector<double> to_doubles(const Vec<QuadScalar>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].to_double();
    return out;
}

std::vector<double> to_doubles_rat(const Vec<Rat>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = rat_to_double(v[i]);
    return out;
}

// Double-precision level function, negative strictly inside.
std::function<double(const std::vector<double>&)> level_of(const Domain& d) {
    if (const auto* e = std::get_if<Ellipsoid>(&d)) {
        std::size_t n = e->center.size();
        std::vector<double> c = to_doubles(e->center);
        std::vector<double> m(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m[i * n + j] = e->shape(i, j).to_double();
        return [n, c, m](const std::vector<double>& x) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) s += m[i * n + j] * (x[i] - c[i]) * (x[j] - c[j]);
            return s - 1.0;
        };
    }
    if (const auto* b = std::get_if<Box>(&d)) {
        std::vector<double> lo = to_doubles_rat(b->lower);
        std::vector<double> hi = to_doubles_rat(b->upper);
        return [lo, hi](const std::vector<double>& x) {
            double worst = -1e300;
            for (std::size_t i = 0; i < lo.size(); ++i) {
                worst = std::max(worst, lo[i] - x[i]);
                worst = std::max(worst, x[i] - hi[i]);
            }
            return worst;
        };
    }
    return std::get<OracleDomain>(d).level;
}

}  // namespace

Ellipsoid make_ellipsoid(Vec<QuadScalar> center, Mat<QuadScalar> shape) {
    const std::size_t n = center.size();
    if (n == 0) throw std::invalid_argument("empty ellipsoid center");
    if (shape.rows != n || shape.cols != n)
        throw std::invalid_argument("shape matrix dimension mismatch");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (shape(i, j) != shape(j, i)) throw std::invalid_argument("shape matrix not symmetric");
    // Sylvester: all leading principal minors strictly positive.
    for (std::size_t k = 1; k <= n; ++k) {
        Mat<QuadScalar> lead(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) lead(i, j) = shape(i, j);
        if (det(lead).sign() <= 0)
            throw std::invalid_argument("shape matrix not positive definite");
    }
    return Ellipsoid{std::move(center), std::move(shape)};
}

Box make_box(Vec<Rat> lower, Vec<Rat> upper) {
    if (lower.empty() || lower.size() != upper.size())
        throw std::invalid_argument("box bounds dimension mismatch");
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (lower[i] >= upper[i]) throw std::invalid_argument("box with empty side");
    return Box{std::move(lower), std::move(upper)};
}

OracleDomain make_superellipsoid(const Vec<Rat>& center, const Vec<Rat>& semi_axes, long power,
                                 double tolerance) {
    const std::size_t n = center.size();
    if (n == 0 || semi_axes.size() != n)
        throw std::invalid_argument("superellipsoid dimension mismatch");
    if (power < 2 || power % 2 != 0)
        throw std::invalid_argument("superellipsoid power must be even and >= 2");
    for (const auto& a : semi_axes)
        if (a <= 0) throw std::invalid_argument("superellipsoid semi-axes must be positive");
    std::vector<double> c = to_doubles_rat(center);
    std::vector<double> ax = to_doubles_rat(semi_axes);
    OracleDomain o;
    o.level = [c, ax, power](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) s += std::pow((x[i] - c[i]) / ax[i], power);
        return s - 1.0;
    };
    Vec<Rat> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = center[i] - semi_axes[i];
        hi[i] = center[i] + semi_axes[i];
    }
    o.bbox = make_box(std::move(lo), std::move(hi));
    o.smooth = true;
    o.slicewise_strictly_convex = true;
    o.tolerance = tolerance;
    o.kind = "superellipsoid";
    o.power = power;
    o.center = center;
    o.semi_axes = semi_axes;
    return o;
}

std::size_t dimension(const Domain& d) {
    if (const auto* e = std::get_if<Ellipsoid>(&d)) return e->center.size();
    if (const auto* b = std::get_if<Box>(&d)) return b->lower.size();
    return std::get<OracleDomain>(d).bbox.lower.size();
}

Containment contains(const Domain& d, const Vec<QuadScalar>& x) {
    if (x.size() != dimension(d)) throw std::invalid_argument("point of wrong dimension");
    if (const auto* e = std::get_if<Ellipsoid>(&d)) {
        QuadScalar form(0);
        const std::size_t n = x.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (e->shape(i, i).is_zero()) continue;
            QuadScalar di = x[i] - e->center[i];
            form += e->shape(i, i) * di * di;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (e->shape(i, j).is_zero()) continue;
                QuadScalar t = e->shape(i, j) * (x[i] - e->center[i]) * (x[j] - e->center[j]);
                form += t + t;
            }
        return (form - QuadScalar(1)).sign() < 0 ? Containment::inside : Containment::outside;
    }
    if (const auto* b = std::get_if<Box>(&d)) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            if ((x[i] - QuadScalar(b->lower[i])).sign() <= 0) return Containment::outside;
            if ((x[i] - QuadScalar(b->upper[i])).sign() >= 0) return Containment::outside;
        }
        return Containment::inside;
    }
    const auto& o = std::get<OracleDomain>(d);
    std::vector<double> xd = to_doubles(x);
    double v = o.level(xd);
    if (v < -o.tolerance) return Containment::inside;
    if (v > o.tolerance) return Containment::outside;
    return Containment::ambiguous;
}

Box bounding_box(const Domain& d) {
    if (const auto* e = std::get_if<Ellipsoid>(&d)) {
        const std::size_t n = e->center.size();
        Mat<QuadScalar> minv = inverse(e->shape);
        Vec<Rat> lo(n), hi(n);
        for (std::size_t i = 0; i < n; ++i) {
            // Support in direction e_i is sqrt((M^-1)_ii).
            Rat w = ceil_sqrt_quad(minv(i, i));
            lo[i] = rat_below(e->center[i] - QuadScalar(w));
            hi[i] = rat_above(e->center[i] + QuadScalar(w));
        }
        return Box{std::move(lo), std::move(hi)};
    }
    if (const auto* b = std::get_if<Box>(&d)) return *b;
    return std::get<OracleDomain>(d).bbox;
}

bool smooth_boundary(const Domain& d) {
    if (std::holds_alternative<Ellipsoid>(d)) return true;
    if (std::holds_alternative<Box>(d)) return false;
    return std::get<OracleDomain>(d).smooth;
}

bool slices_strictly_convex(const Domain& d) {
    if (std::holds_alternative<Ellipsoid>(d)) return true;
    if (std::holds_alternative<Box>(d)) return false;
    return std::get<OracleDomain>(d).slicewise_strictly_convex;
}

std::string domain_kind(const Domain& d) {
    if (std::holds_alternative<Ellipsoid>(d)) return "ellipsoid";
    if (std::holds_alternative<Box>(d)) return "box";
    return std::get<OracleDomain>(d).kind;
}

double unit_ball_volume(std::size_t m) {
    // omega_m = omega_{m-2} * 2 pi / m.
    double v = m % 2 == 0 ? 1.0 : 2.0;
    for (std::size_t k = m % 2 == 0 ? 2 : 3; k <= m; k += 2) {
        v *= 2.0 * M_PI / static_cast<double>(k);
    }
    return v;
}

double slice_volume_ellipsoid(const Ellipsoid& e, const Vec<Rat>& gamma_star,
                              const SubspaceData& s) {
    const std::size_t n = s.n;
    const std::size_t k = n - s.r;
    if (e.center.size() != n) throw std::invalid_argument("ellipsoid dimension mismatch");
    if (gamma_star.size() != n) throw std::invalid_argument("fiber point dimension mismatch");
    if (s.gamma_perp.basis.size() != k)
        throw std::invalid_argument("perp lattice rank mismatch");

    // Parameterize the fiber as gamma* + W^T v over the perp basis rows W.
    std::vector<Vec<QuadScalar>> w_rows;
    w_rows.reserve(k);
    for (const auto& row : s.gamma_perp.basis) w_rows.push_back(convert_vec<QuadScalar>(row));
    Mat<QuadScalar> w = mat_from_rows(w_rows, n);
    Mat<QuadScalar> mw = mat_mul(e.shape, transpose(w));
    Mat<QuadScalar> a0 = mat_mul(w, mw);  // W M W^T

    Vec<QuadScalar> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = QuadScalar(gamma_star[i]) - e.center[i];
    Vec<QuadScalar> b = mat_vec(w, mat_vec(e.shape, diff));
    Vec<QuadScalar> negb(k);
    for (std::size_t i = 0; i < k; ++i) negb[i] = -b[i];
    auto vstar = solve(a0, negb);
    if (!vstar) throw std::domain_error("degenerate restricted form");

    // Minimum of the quadratic form over the fiber.
    QuadScalar m = dot(diff, mat_vec(e.shape, diff)) + dot(b, *vstar);
    QuadScalar rem = QuadScalar(1) - m;
    if (rem.sign() <= 0) return 0.0;

    std::vector<Vec<Rat>> perp_rat;
    perp_rat.reserve(k);
    for (const auto& row : s.gamma_perp.basis) perp_rat.push_back(convert_vec<Rat>(row));
    Rat g0 = covolume_sq(perp_rat);
    double det_a0 = det(a0).to_double();
    return unit_ball_volume(k) * std::pow(rem.to_double(), static_cast<double>(k) / 2.0) *
           std::sqrt(rat_to_double(g0) / det_a0);
}

McEstimate slice_volume_mc(const Domain& d, const Vec<Rat>& gamma_star, const SubspaceData& s,
                           long long samples, std::uint64_t seed) {
    if (samples <= 0) throw std::invalid_argument("sample count must be positive");
    const std::size_t n = s.n;
    const std::size_t k = n - s.r;

    // Orthonormalize the perp basis in doubles (exact basis, float frame).
    std::vector<std::vector<double>> w;
    for (const auto& row : s.gamma_perp.basis) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = row[i].get_d();
        for (const auto& prev : w) {
            double c = 0.0;
            for (std::size_t i = 0; i < n; ++i) c += v[i] * prev[i];
            for (std::size_t i = 0; i < n; ++i) v[i] -= c * prev[i];
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
        w.push_back(std::move(v));
    }

    Box bb = bounding_box(d);
    std::vector<double> lo = to_doubles_rat(bb.lower);
    std::vector<double> hi = to_doubles_rat(bb.upper);
    std::vector<double> gs = to_doubles_rat(gamma_star);

    // The fiber is gs + span(w); if its (fixed) V-component is outside the
    // box projection the slice is empty.
    for (std::size_t j = 0; j < s.r; ++j) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = s.gamma.basis[j][i].get_d();
        double t = 0.0, vmin = 0.0, vmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            t += v[i] * gs[i];
            vmin += v[i] * (v[i] > 0 ? lo[i] : hi[i]);
            vmax += v[i] * (v[i] > 0 ? hi[i] : lo[i]);
        }
        if (t < vmin - 1e-9 || t > vmax + 1e-9) return {0.0, 0.0, samples};
    }

    // Coordinate box in the fiber frame containing bbox intersect fiber.
    std::vector<double> ulo(k), uhi(k);
    for (std::size_t j = 0; j < k; ++j) {
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double wji = w[j][i];
            a += wji * ((wji > 0 ? lo[i] : hi[i]) - gs[i]);
            b += wji * ((wji > 0 ? hi[i] : lo[i]) - gs[i]);
        }
        ulo[j] = a;
        uhi[j] = b;
        if (!(a < b)) return {0.0, 0.0, samples};
    }
    double box_vol = 1.0;
    for (std::size_t j = 0; j < k; ++j) box_vol *= uhi[j] - ulo[j];

    auto level = level_of(d);
    long long hits = 0;
    std::vector<double> x(n);
    const long long chunk_size = 65536;
    // Each chunk consumes at most chunk_size * k draws; stride the start state
    // by that many increments so the per-chunk streams never overlap.
    const std::uint64_t draws_per_chunk = static_cast<std::uint64_t>(chunk_size) * k;
    for (long long start = 0, chunk = 0; start < samples; start += chunk_size, ++chunk) {
        std::uint64_t state = seed + 0x9E3779B97F4A7C15ULL *
                                         (draws_per_chunk * static_cast<std::uint64_t>(chunk));
        long long limit = std::min(chunk_size, samples - start);
        for (long long i = 0; i < limit; ++i) {
            for (std::size_t t = 0; t < n; ++t) x[t] = gs[t];
            for (std::size_t j = 0; j < k; ++j) {
                double u = ulo[j] + uniform01(state) * (uhi[j] - ulo[j]);
                for (std::size_t t = 0; t < n; ++t) x[t] += u * w[j][t];
            }
            if (level(x) < 0.0) ++hits;
        }
    }
    double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {box_vol * p, box_vol * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)),
            samples};
}

}  // namespace anisolat
