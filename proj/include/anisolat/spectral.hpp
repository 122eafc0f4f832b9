// spectral.hpp -- eigenvalue counting for the magnetic Laplacian on the
// torus T^n = R^n/Z^n in the adiabatic metric g_eps = g_F + eps^{-2} g_H.
//
// Eigenvalues are indexed by k in Z^n:
//   lambda_k(eps) = 4 pi^2 (|pi_F(k - A)|^2 + eps^2 |pi_H(k - A)|^2),
// where A is the (constant) magnetic potential.  Thresholds are passed as
// mu = lambda / (4 pi^2), kept rational so comparisons are exact.  When A
// lies in F, N_eps(4 pi^2 mu) equals the dilated count of the ball
// B_sqrt(mu)(A); the counting function itself is exact for every A.
#pragma once

#include "anisolat/lattice.hpp"

namespace anisolat {

struct SpectralConfig {
    const SubspaceData* subspace = nullptr;
    Vec<Rat> potential;  // A
    Rat eps = 1;
    Rat mu = 1;          // threshold lambda = 4 pi^2 mu
};

// lambda_k(eps) as a double (the squared norms are exact in Q(sqrt(d))).
double eigenvalue(const SpectralConfig& cfg, const Vec<Int>& k);

// Exact N_eps(4 pi^2 mu) = #{k : lambda_k(eps) < 4 pi^2 mu}.
long long counting_function(const SpectralConfig& cfg, long long budget = 1000000000,
                            int threads = 0);

// eps^{-q} omega_{n-r} / |Q| * sum over gamma* of
// (mu - |gamma* - pi_V(A)|^2)_+^{(n-r)/2}: the slice-volume leading term of
// the equivalent dilation problem for the ball B_sqrt(mu)(A).
double spectral_leading_term(const SpectralConfig& cfg);

}  // namespace anisolat
