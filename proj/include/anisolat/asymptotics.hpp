// asymptotics.hpp -- leading term of n_eps(D), remainder exponents, eps
// sweeps, and log-log regression of the remainder.
//
// Leading term: eps^{-q} / |Q| * sum over gamma* of vol_{n-r}(fiber cap D).
// Remainder = O(eps^{k-q}) with the gain k depending on the geometry:
//   general smooth boundary:   k = 1/(p - r + 1)
//   strictly convex slices:    k = (q+1)/(2(p-r+1))   if (q-1)/2 <= p-r
//                              k = 2q/(q+1+2(p-r))    otherwise
// (p == 0 reduces to the classical ball remainder k = 2q/(q+1).)
#pragma once

#include "anisolat/counting.hpp"

#include <optional>

namespace anisolat {

struct LeadingTerm {
    double value = 0.0;
    double stderr_value = 0.0;  // 0 for exact (ellipsoid / box) slice volumes
    long long fibers = 0;       // fibers with positive slice volume
};

struct SweepRecord {
    Rat eps;
    bool skipped = false;       // budget exceeded; numeric fields unset
    long long count = 0;
    long long ambiguous = 0;
    double leading = 0.0;
    double remainder = 0.0;
    double predicted_exponent = 0.0;
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    int points = 0;             // rows used (nonzero remainder, not skipped)
    int dropped = 0;            // rows excluded
};

LeadingTerm leading_term(const Domain& d, const SubspaceData& s, const Rat& eps,
                         long long mc_samples = 1000000, std::uint64_t seed = 20240901);

// Exponent e such that remainder = O(eps^{-q+e}); returned as the exponent
// of the remainder itself relative to eps -> 0, i.e. remainder = O(eps^{e-q}).
double predicted_exponent(const SubspaceData& s, bool strictly_convex_slices);

std::vector<SweepRecord> sweep(const Domain& d, const SubspaceData& s,
                               const std::vector<Rat>& eps_grid, long long budget = 1000000000,
                               long long mc_samples = 1000000, std::uint64_t seed = 20240901,
                               int threads = 0);

// OLS of log|remainder| against log(1/eps).  Skipped rows and rows with
// remainder exactly 0 are dropped; throws when fewer than 3 rows remain.
FitResult fit_remainder(const std::vector<SweepRecord>& records);

}  // namespace anisolat
