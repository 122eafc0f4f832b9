// lattice.hpp -- the lattice apparatus attached to a subspace F of R^n.
//
// From a basis of F with entries in Q(sqrt(d)) this builds:
//   Gamma      = Z^n intersect F          (saturated, rank r <= dim F)
//   V          = span(Gamma)              (the rational part of F)
//   Gamma*     = basis of V dual to Gamma inside V
//   Gamma_perp = Z^n intersect V_perp     (saturated, rank n - r)
// together with |Q|^2 = det Gram(Gamma) and the orthogonal projections
// onto F and onto V.  Lattice points project into Gamma*, so counting
// splits over the affine fibers gamma* + V_perp.
#pragma once

#include "anisolat/linalg.hpp"
#include "anisolat/quad_scalar.hpp"

#include <cstddef>

namespace anisolat {

struct IntegerLattice {
    std::size_t n = 0;                // ambient dimension
    std::vector<Vec<Int>> basis;      // HNF rows, saturated
    Rat gram_det = 1;                 // det of the Gram matrix (1 when empty)
};

struct DualLattice {
    std::size_t n = 0;
    std::vector<Vec<Rat>> basis;      // dual basis inside span of the primal
};

struct SubspaceData {
    std::size_t n = 0;                // ambient dimension
    std::size_t p = 0;                // dim F
    std::size_t q = 0;                // dim H = n - p
    long d = 1;                       // radicand of the coefficient field

    std::vector<Vec<QuadScalar>> f_basis;   // rows spanning F
    std::vector<Vec<QuadScalar>> h_basis;   // rows spanning H = F_perp

    IntegerLattice gamma;             // Z^n cap F
    std::size_t r = 0;                // rank of gamma
    DualLattice gamma_star;
    IntegerLattice gamma_perp;        // Z^n cap V_perp
    Rat covolume_sq = 1;              // |Q|^2 = gamma.gram_det

    Mat<QuadScalar> proj_f;           // orthogonal projection onto F
    Mat<Rat> proj_v;                  // orthogonal projection onto V
};

// Saturated basis of {k in Z^n : M k = 0} for rational M.
IntegerLattice integer_kernel(const Mat<Rat>& m);

// Basis of span(L) pairing to delta_ij against L's basis.
DualLattice dual_basis(const IntegerLattice& l);

Rat covolume_sq(const std::vector<Vec<Rat>>& basis_rows);

// Full apparatus for F = row span of f_basis.  Requires 0 <= p < n and
// independent rows; entries must live in Q(sqrt(d)).
SubspaceData build_subspace(const std::vector<Vec<QuadScalar>>& f_basis, std::size_t n, long d);

Vec<Rat> project_v(const SubspaceData& s, const Vec<Rat>& x);

// Coordinates of pi_V(k) in the dual basis: m_j = <gamma_j, k>, exact.
Vec<Int> fiber_coords(const SubspaceData& s, const Vec<Int>& k);

// gamma* = sum_j m_j ell*_j for integer fiber coordinates m.
Vec<Rat> dual_point(const SubspaceData& s, const Vec<Int>& m);

}  // namespace anisolat
