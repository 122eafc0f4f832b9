// counting.hpp -- exact lattice point counts in anisotropically dilated
// domains.  T_eps fixes F and stretches H by 1/eps, so
// n_eps(D) = #{k in Z^n : T_eps^{-1} k in D} with T_eps^{-1} k = k_F + eps k_H.
#pragma once

#include "anisolat/domain.hpp"
#include "anisolat/lattice.hpp"

#include <map>
#include <stdexcept>

namespace anisolat {

struct CountResult {
    Rat eps;
    long long total = 0;
    long long ambiguous = 0;
    // Fiber coordinates of gamma* (in the dual basis) -> points on that fiber.
    std::map<std::vector<long long>, long long> by_fiber;
};

// Thrown when the candidate box exceeds the enumeration budget.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(double estimate)
        : std::runtime_error("enumeration budget exceeded"), estimated_candidates(estimate) {}
    double estimated_candidates;
};

// T_eps^{-1} k = pi_F(k) + eps * pi_H(k), exact in Q(sqrt(d)).
Vec<QuadScalar> t_eps_inverse(const SubspaceData& s, const Vec<Int>& k, const Rat& eps);

// requested > 0 wins; else the ANISOLAT_THREADS env var; else min(hw, 8).
int default_thread_count(int requested);

// Exact count of T_eps(D) intersect Z^n, split by fiber.  Enumerates a box
// that contains T_eps(bounding_box(D)) and tests each candidate exactly.
// threads = 0 picks a machine default; results are thread-count invariant.
CountResult count_points(const Domain& d, const SubspaceData& s, const Rat& eps,
                         long long budget = 1000000000, int threads = 0);

// Independent baseline for the trivial subspace: #(Z^n cap eps^{-1} D) by
// direct rational enumeration, no lattice machinery.
long long gauss_reference(const Domain& d, const Rat& eps, long long budget = 1000000000);

}  // namespace anisolat
