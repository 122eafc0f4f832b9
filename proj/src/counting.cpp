#include "anisolat/counting.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace anisolat {

namespace {

// Per-coordinate integer ranges covering T_eps(bounding_box(D)): the image
// of the box lies in a ball of radius s = max(1, 1/eps) * circumradius
// around T_eps(box center).
struct EnumBox {
    std::vector<long> lo, hi;  // inclusive
    double candidates = 1.0;
};

EnumBox enumeration_box(const Domain& d, const SubspaceData& s, const Rat& eps,
                        long long budget) {
    const std::size_t n = s.n;
    Box bb = bounding_box(d);
    Vec<Rat> c(n);
    Rat r2(0);
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = (bb.lower[i] + bb.upper[i]) / 2;
        Rat h = (bb.upper[i] - bb.lower[i]) / 2;
        r2 += h * h;
    }
    Rat stretch = eps < 1 ? Rat(1) / eps : Rat(1);
    Rat radius = ceil_sqrt(r2) * stretch;

    // T_eps(c) = c + (1/eps - 1) pi_H(c), computed exactly.
    Vec<QuadScalar> cq = convert_vec<QuadScalar>(c);
    Vec<QuadScalar> cf = mat_vec(s.proj_f, cq);
    QuadScalar shift = QuadScalar(Rat(1) / eps - 1);

    EnumBox box;
    box.lo.resize(n);
    box.hi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        QuadScalar ti = cq[i] + shift * (cq[i] - cf[i]);
        Int lo = quad_ceil(ti - QuadScalar(radius));
        Int hi = quad_floor(ti + QuadScalar(radius));
        if (!lo.fits_slong_p() || !hi.fits_slong_p())
            throw BudgetExceeded(1e300);
        box.lo[i] = lo.get_si();
        box.hi[i] = hi.get_si();
        box.candidates *=
            std::max(0.0, static_cast<double>(box.hi[i]) - static_cast<double>(box.lo[i]) + 1.0);
    }
    if (box.candidates > static_cast<double>(budget)) throw BudgetExceeded(box.candidates);
    return box;
}

// Counts candidates with first coordinate in [lo0, hi0], recursing over the
// remaining coordinates.  u = T_eps^{-1} k is accumulated per level, so each
// inner step costs one exact column addition instead of a full product.
void count_range(const Domain& d, const SubspaceData& s, const Mat<QuadScalar>& t_inv,
                 const EnumBox& box, long first_lo, long first_hi, CountResult& out) {
    const std::size_t n = s.n;
    Vec<Int> k(n, Int(0));
    std::vector<long long> key(s.r, 0);

    std::vector<Vec<QuadScalar>> col(n, Vec<QuadScalar>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) col[j][i] = t_inv(i, j);

    // acc[dim+1] = sum over j <= dim of k_j * col_j; acc[0] = 0.
    std::vector<Vec<QuadScalar>> acc(n + 1, Vec<QuadScalar>(n, QuadScalar(0)));

    auto test_point = [&]() {
        Containment c = contains(d, acc[n]);
        if (c == Containment::ambiguous) {
            ++out.ambiguous;
            return;
        }
        if (c != Containment::inside) return;
        ++out.total;
        for (std::size_t j = 0; j < s.r; ++j) {
            Int dotk(0);
            for (std::size_t i = 0; i < n; ++i) dotk += s.gamma.basis[j][i] * k[i];
            key[j] = dotk.get_si();
        }
        ++out.by_fiber[key];
    };

    auto walk = [&](auto&& self, std::size_t dim) -> void {
        long lo = dim == 0 ? first_lo : box.lo[dim];
        long hi = dim == 0 ? first_hi : box.hi[dim];
        QuadScalar start{Rat(lo)};
        for (std::size_t i = 0; i < n; ++i) {
            acc[dim + 1][i] = acc[dim][i];
            if (!col[dim][i].is_zero()) acc[dim + 1][i] += col[dim][i] * start;
        }
        for (long v = lo; v <= hi; ++v) {
            k[dim] = v;
            if (v != lo) {
                for (std::size_t i = 0; i < n; ++i) {
                    if (!col[dim][i].is_zero()) acc[dim + 1][i] += col[dim][i];
                }
            }
            if (dim + 1 == n) {
                test_point();
            } else {
                self(self, dim + 1);
            }
        }
    };
    if (first_lo > first_hi) return;
    walk(walk, 0);
}

}  // namespace

int default_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ANISOLAT_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
}

Vec<QuadScalar> t_eps_inverse(const SubspaceData& s, const Vec<Int>& k, const Rat& eps) {
    if (k.size() != s.n) throw std::invalid_argument("point of wrong dimension");
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    Vec<QuadScalar> kq = convert_vec<QuadScalar>(k);
    Vec<QuadScalar> kf = mat_vec(s.proj_f, kq);
    QuadScalar e{Rat(eps)};
    Vec<QuadScalar> out(s.n);
    for (std::size_t i = 0; i < s.n; ++i) out[i] = kf[i] + e * (kq[i] - kf[i]);
    return out;
}

CountResult count_points(const Domain& d, const SubspaceData& s, const Rat& eps,
                         long long budget, int threads) {
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    if (dimension(d) != s.n) throw std::invalid_argument("domain/subspace dimension mismatch");

    EnumBox box = enumeration_box(d, s, eps, budget);

    // T_eps^{-1} = eps I + (1 - eps) proj_F as a matrix.
    Mat<QuadScalar> t_inv(s.n, s.n);
    QuadScalar e{Rat(eps)};
    QuadScalar one_minus{Rat(1) - eps};
    for (std::size_t i = 0; i < s.n; ++i) {
        for (std::size_t j = 0; j < s.n; ++j) {
            t_inv(i, j) = one_minus * s.proj_f(i, j);
            if (i == j) t_inv(i, j) += e;
        }
    }

    CountResult result;
    result.eps = eps;

    long span = box.hi[0] - box.lo[0] + 1;
    if (span <= 0) return result;
    int nthreads = std::min<long>(default_thread_count(threads), span);
    if (nthreads <= 1) {
        count_range(d, s, t_inv, box, box.lo[0], box.hi[0], result);
        return result;
    }

    std::vector<CountResult> parts(nthreads);
    std::vector<std::thread> workers;
    workers.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) {
        long lo = box.lo[0] + span * t / nthreads;
        long hi = box.lo[0] + span * (t + 1) / nthreads - 1;
        workers.emplace_back(
            [&, lo, hi, t]() { count_range(d, s, t_inv, box, lo, hi, parts[t]); });
    }
    for (auto& w : workers) w.join();
    for (const auto& part : parts) {
        result.total += part.total;
        result.ambiguous += part.ambiguous;
        for (const auto& [key, cnt] : part.by_fiber) result.by_fiber[key] += cnt;
    }
    return result;
}

long long gauss_reference(const Domain& d, const Rat& eps, long long budget) {
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    Box bb = bounding_box(d);
    const std::size_t n = bb.lower.size();
    std::vector<long> lo(n), hi(n);
    double candidates = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        Int l = rat_ceil(bb.lower[i] / eps);
        Int h = rat_floor(bb.upper[i] / eps);
        if (!l.fits_slong_p() || !h.fits_slong_p()) throw BudgetExceeded(1e300);
        lo[i] = l.get_si();
        hi[i] = h.get_si();
        candidates *=
            std::max(0.0, static_cast<double>(hi[i]) - static_cast<double>(lo[i]) + 1.0);
    }
    if (candidates > static_cast<double>(budget)) throw BudgetExceeded(candidates);

    long long count = 0;
    Vec<QuadScalar> x(n);
    auto walk = [&](auto&& self, std::size_t dim) -> void {
        for (long v = lo[dim]; v <= hi[dim]; ++v) {
            x[dim] = QuadScalar(Rat(v) * eps);
            if (dim + 1 == n) {
                if (contains(d, x) == Containment::inside) ++count;
            } else {
                self(self, dim + 1);
            }
        }
    };
    if (candidates >= 1.0) walk(walk, 0);
    return count;
}

}  // namespace anisolat
