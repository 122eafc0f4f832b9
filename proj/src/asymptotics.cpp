#include "anisolat/asymptotics.hpp"

#include <cmath>

namespace anisolat {

namespace {

// Fiber coordinate ranges for every gamma* whose fiber can meet the
// circumball of the bounding box: |<gamma_j, x>| <= |gamma_j| |x|.
struct FiberRanges {
    std::vector<long> lo, hi;
    bool empty = false;
};

FiberRanges fiber_ranges(const Domain& d, const SubspaceData& s) {
    FiberRanges out;
    Box bb = bounding_box(d);
    const std::size_t n = s.n;
    Vec<Rat> c(n);
    Rat r2(0);
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = (bb.lower[i] + bb.upper[i]) / 2;
        Rat h = (bb.upper[i] - bb.lower[i]) / 2;
        r2 += h * h;
    }
    for (std::size_t j = 0; j < s.r; ++j) {
        Rat center(0), norm2(0);
        for (std::size_t i = 0; i < n; ++i) {
            Rat gi = Rat(s.gamma.basis[j][i]);
            center += gi * c[i];
            norm2 += gi * gi;
        }
        Rat spread = ceil_sqrt(r2 * norm2);
        Int lo = rat_ceil(center - spread);
        Int hi = rat_floor(center + spread);
        out.lo.push_back(lo.get_si());
        out.hi.push_back(hi.get_si());
        if (lo > hi) out.empty = true;
    }
    return out;
}

}  // namespace

LeadingTerm leading_term(const Domain& d, const SubspaceData& s, const Rat& eps,
                         long long mc_samples, std::uint64_t seed) {
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    if (dimension(d) != s.n) throw std::invalid_argument("domain/subspace dimension mismatch");

    const auto* ellipsoid = std::get_if<Ellipsoid>(&d);
    const auto* box = std::get_if<Box>(&d);

    double slice_sum = 0.0;
    double var_sum = 0.0;
    long long fibers = 0;

    auto add_fiber = [&](const Vec<Int>& m, std::uint64_t fiber_seed) {
        Vec<Rat> gs = dual_point(s, m);
        double v = 0.0, se = 0.0;
        if (ellipsoid) {
            v = slice_volume_ellipsoid(*ellipsoid, gs, s);
        } else if (box && s.r == 0) {
            // Full-dimensional fiber through the origin: exact box volume.
            Rat vol(1);
            for (std::size_t i = 0; i < s.n; ++i) vol *= box->upper[i] - box->lower[i];
            v = rat_to_double(vol);
        } else {
            McEstimate est = slice_volume_mc(d, gs, s, mc_samples, fiber_seed);
            v = est.value;
            se = est.stderr_value;
        }
        if (v > 0.0 || se > 0.0) {
            slice_sum += v;
            var_sum += se * se;
            ++fibers;
        }
    };

    if (s.r == 0) {
        add_fiber(Vec<Int>{}, seed);
    } else {
        FiberRanges ranges = fiber_ranges(d, s);
        if (!ranges.empty) {
            Vec<Int> m(s.r, Int(0));
            std::uint64_t fiber_index = 0;
            auto walk = [&](auto&& self, std::size_t j) -> void {
                for (long v = ranges.lo[j]; v <= ranges.hi[j]; ++v) {
                    m[j] = v;
                    if (j + 1 == s.r) {
                        add_fiber(m, seed + 0x51ED2701ULL * ++fiber_index);
                    } else {
                        self(self, j + 1);
                    }
                }
            };
            walk(walk, 0);
        }
    }

    // eps^{-q} exactly in rational arithmetic, converted once.
    Rat scale = rat_pow(Rat(1) / eps, static_cast<long>(s.q));
    double factor = rat_to_double(scale) / std::sqrt(rat_to_double(s.covolume_sq));
    return {factor * slice_sum, factor * std::sqrt(var_sum), fibers};
}

double predicted_exponent(const SubspaceData& s, bool strictly_convex_slices) {
    const double p = static_cast<double>(s.p);
    const double q = static_cast<double>(s.q);
    const double r = static_cast<double>(s.r);
    double k;
    if (strictly_convex_slices) {
        if ((q - 1.0) / 2.0 <= p - r) {
            k = (q + 1.0) / (2.0 * (p - r + 1.0));
        } else {
            k = 2.0 * q / (q + 1.0 + 2.0 * (p - r));
        }
    } else {
        k = 1.0 / (p - r + 1.0);
    }
    return k - q;
}

std::vector<SweepRecord> sweep(const Domain& d, const SubspaceData& s,
                               const std::vector<Rat>& eps_grid, long long budget,
                               long long mc_samples, std::uint64_t seed, int threads) {
    double exponent = predicted_exponent(s, slices_strictly_convex(d));
    std::vector<SweepRecord> records;
    records.reserve(eps_grid.size());
    for (const Rat& eps : eps_grid) {
        SweepRecord rec;
        rec.eps = eps;
        rec.predicted_exponent = exponent;
        try {
            CountResult count = count_points(d, s, eps, budget, threads);
            LeadingTerm lead = leading_term(d, s, eps, mc_samples, seed);
            rec.count = count.total;
            rec.ambiguous = count.ambiguous;
            rec.leading = lead.value;
            rec.remainder = static_cast<double>(count.total) - lead.value;
        } catch (const BudgetExceeded&) {
            rec.skipped = true;
        }
        records.push_back(std::move(rec));
    }
    return records;
}

FitResult fit_remainder(const std::vector<SweepRecord>& records) {
    std::vector<double> xs, ys;
    int dropped = 0;
    for (const auto& rec : records) {
        if (rec.skipped || rec.remainder == 0.0) {
            ++dropped;
            continue;
        }
        xs.push_back(-std::log(rat_to_double(rec.eps)));
        ys.push_back(std::log(std::fabs(rec.remainder)));
    }
    const int n = static_cast<int>(xs.size());
    if (n < 3) throw std::invalid_argument("fit needs at least 3 usable sweep rows");

    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit needs at least two distinct eps values");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.points = n;
    fit.dropped = dropped;
    double ssr = 0.0;
    for (int i = 0; i < n; ++i) {
        double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ssr += e * e;
    }
    fit.stderr_slope = n > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
    return fit;
}

}  // namespace anisolat
