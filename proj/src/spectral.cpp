#include "anisolat/spectral.hpp"

#include "anisolat/counting.hpp"
#include "anisolat/domain.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace anisolat {

namespace {

void validate(const SpectralConfig& cfg) {
    if (!cfg.subspace) throw std::invalid_argument("spectral config without subspace");
    if (cfg.potential.size() != cfg.subspace->n)
        throw std::invalid_argument("potential of wrong dimension");
    if (cfg.eps <= 0) throw std::invalid_argument("eps must be positive");
    if (cfg.mu < 0) throw std::invalid_argument("mu must be nonnegative");
}

// Exact squared norms |pi_F(w)|^2 and |pi_H(w)|^2 for rational w: the first
// is w^T P_F w, an element of Q(sqrt(d)); the second is |w|^2 minus the
// first, so both norms stay in the field and comparisons remain exact.
std::pair<QuadScalar, QuadScalar> split_norms(const SubspaceData& s, const Vec<Rat>& w) {
    QuadScalar ff(0);
    for (std::size_t i = 0; i < s.n; ++i) {
        if (w[i] == 0) continue;
        for (std::size_t j = 0; j < s.n; ++j) {
            if (s.proj_f(i, j).is_zero() || w[j] == 0) continue;
            ff += s.proj_f(i, j) * QuadScalar(w[i] * w[j]);
        }
    }
    Rat total(0);
    for (std::size_t i = 0; i < s.n; ++i) total += w[i] * w[i];
    return {ff, QuadScalar(total) - ff};
}

}  // namespace

double eigenvalue(const SpectralConfig& cfg, const Vec<Int>& k) {
    validate(cfg);
    const SubspaceData& s = *cfg.subspace;
    if (k.size() != s.n) throw std::invalid_argument("index of wrong dimension");
    Vec<Rat> w(s.n);
    for (std::size_t i = 0; i < s.n; ++i) w[i] = Rat(k[i]) - cfg.potential[i];
    auto [f, h] = split_norms(s, w);
    QuadScalar value = f + QuadScalar(cfg.eps * cfg.eps) * h;
    return 4.0 * M_PI * M_PI * value.to_double();
}

long long counting_function(const SpectralConfig& cfg, long long budget, int threads) {
    validate(cfg);
    const SubspaceData& s = *cfg.subspace;
    const std::size_t n = s.n;

    // lambda_k < 4 pi^2 mu forces |k - A|^2 <= mu max(1, eps^-2).
    Rat stretch = cfg.eps < 1 ? Rat(1) / cfg.eps : Rat(1);
    Rat radius = ceil_sqrt(cfg.mu) * stretch;
    std::vector<long> lo(n), hi(n);
    double candidates = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        Int l = rat_ceil(cfg.potential[i] - radius);
        Int h = rat_floor(cfg.potential[i] + radius);
        if (!l.fits_slong_p() || !h.fits_slong_p()) throw BudgetExceeded(1e300);
        lo[i] = l.get_si();
        hi[i] = h.get_si();
        candidates *= std::max(0.0, static_cast<double>(hi[i]) - static_cast<double>(lo[i]) + 1.0);
    }
    if (candidates > static_cast<double>(budget)) throw BudgetExceeded(candidates);
    if (candidates < 1.0) return 0;

    QuadScalar eps_sq(cfg.eps * cfg.eps);
    QuadScalar mu_threshold(cfg.mu);

    auto count_slab = [&](long first_lo, long first_hi) {
        long long count = 0;
        Vec<Rat> w(n);
        std::vector<long> k(n, 0);
        auto walk = [&](auto&& self, std::size_t dim) -> void {
            long a = dim == 0 ? first_lo : lo[dim];
            long b = dim == 0 ? first_hi : hi[dim];
            for (long v = a; v <= b; ++v) {
                k[dim] = v;
                if (dim + 1 == n) {
                    for (std::size_t i = 0; i < n; ++i) w[i] = Rat(k[i]) - cfg.potential[i];
                    auto [f, h] = split_norms(s, w);
                    if (f + eps_sq * h < mu_threshold) ++count;
                } else {
                    self(self, dim + 1);
                }
            }
        };
        if (first_lo <= first_hi) walk(walk, 0);
        return count;
    };

    long span = hi[0] - lo[0] + 1;
    int nthreads = static_cast<int>(std::min<long>(default_thread_count(threads), span));
    if (nthreads <= 1) return count_slab(lo[0], hi[0]);

    std::vector<long long> parts(nthreads, 0);
    std::vector<std::thread> workers;
    for (int t = 0; t < nthreads; ++t) {
        long a = lo[0] + span * t / nthreads;
        long b = lo[0] + span * (t + 1) / nthreads - 1;
        workers.emplace_back([&, a, b, t]() { parts[t] = count_slab(a, b); });
    }
    for (auto& wkr : workers) wkr.join();
    long long total = 0;
    for (long long part : parts) total += part;
    return total;
}

double spectral_leading_term(const SpectralConfig& cfg) {
    validate(cfg);
    const SubspaceData& s = *cfg.subspace;
    Vec<Rat> av = project_v(s, cfg.potential);

    double sum = 0.0;
    if (s.r == 0) {
        if (cfg.mu > 0) sum = std::pow(rat_to_double(cfg.mu), static_cast<double>(s.n) / 2.0);
    } else {
        // |gamma* - pi_V(A)| <= sqrt(mu) constrains each fiber coordinate:
        // m_j = <gamma_j, gamma*> ranges over <gamma_j, A> +- sqrt(mu)|gamma_j|.
        std::vector<long> lo(s.r), hi(s.r);
        for (std::size_t j = 0; j < s.r; ++j) {
            Rat center(0), norm2(0);
            for (std::size_t i = 0; i < s.n; ++i) {
                Rat gi = Rat(s.gamma.basis[j][i]);
                center += gi * av[i];
                norm2 += gi * gi;
            }
            Rat spread = ceil_sqrt(cfg.mu * norm2);
            lo[j] = rat_ceil(center - spread).get_si();
            hi[j] = rat_floor(center + spread).get_si();
        }
        Vec<Int> m(s.r, Int(0));
        const double half_dim = static_cast<double>(s.n - s.r) / 2.0;
        auto walk = [&](auto&& self, std::size_t j) -> void {
            for (long v = lo[j]; v <= hi[j]; ++v) {
                m[j] = v;
                if (j + 1 == s.r) {
                    Vec<Rat> gs = dual_point(s, m);
                    Rat dist2(0);
                    for (std::size_t i = 0; i < s.n; ++i) {
                        Rat diff = gs[i] - av[i];
                        dist2 += diff * diff;
                    }
                    Rat t = cfg.mu - dist2;
                    if (t > 0) sum += std::pow(rat_to_double(t), half_dim);
                } else {
                    self(self, j + 1);
                }
            }
        };
        if (s.r > 0) walk(walk, 0);
    }

    Rat scale = rat_pow(Rat(1) / cfg.eps, static_cast<long>(s.q));
    return rat_to_double(scale) * unit_ball_volume(s.n - s.r) * sum /
           std::sqrt(rat_to_double(s.covolume_sq));
}

}  // namespace anisolat
