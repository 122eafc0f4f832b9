#include "anisolat/lattice.hpp"

#include "anisolat/hnf.hpp"

#include <stdexcept>

namespace anisolat {

namespace {

Rat gram_det_of(const std::vector<Vec<Int>>& rows) {
    if (rows.empty()) return Rat(1);
    std::vector<Vec<Rat>> rat_rows;
    rat_rows.reserve(rows.size());
    for (const auto& r : rows) rat_rows.push_back(convert_vec<Rat>(r));
    return det(gram_from_rows(rat_rows));
}

}  // namespace

IntegerLattice integer_kernel(const Mat<Rat>& m) {
    // Clear denominators row by row; the kernel is unchanged.
    ZMat c(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) {
        Int l(1);
        for (std::size_t j = 0; j < m.cols; ++j) {
            Int d = m(i, j).get_den();
            l = l / gcd(l, d) * d;
        }
        for (std::size_t j = 0; j < m.cols; ++j) {
            Rat scaled = m(i, j) * Rat(l);
            c(i, j) = scaled.get_num();
        }
    }
    IntegerLattice out;
    out.n = m.cols;
    out.basis = integer_kernel_of(c);
    out.gram_det = gram_det_of(out.basis);
    return out;
}

DualLattice dual_basis(const IntegerLattice& l) {
    DualLattice out;
    out.n = l.n;
    if (l.basis.empty()) return out;
    std::vector<Vec<Rat>> rows;
    rows.reserve(l.basis.size());
    for (const auto& r : l.basis) rows.push_back(convert_vec<Rat>(r));
    // Rows of Gram^-1 * B pair to delta_ij against B and stay in span(B).
    Mat<Rat> ginv = inverse(gram_from_rows(rows));
    Mat<Rat> dual = mat_mul(ginv, mat_from_rows(rows, l.n));
    for (std::size_t i = 0; i < dual.rows; ++i) out.basis.push_back(dual.row(i));
    return out;
}

Rat covolume_sq(const std::vector<Vec<Rat>>& basis_rows) {
    if (basis_rows.empty()) return Rat(1);
    return det(gram_from_rows(basis_rows));
}

SubspaceData build_subspace(const std::vector<Vec<QuadScalar>>& f_basis, std::size_t n, long d) {
    if (n == 0) throw std::invalid_argument("ambient dimension must be positive");
    const std::size_t p = f_basis.size();
    if (p >= n) throw std::invalid_argument("dim F must be smaller than the ambient dimension");

    SubspaceData s;
    s.n = n;
    s.p = p;
    s.q = n - p;
    s.d = d <= 1 ? 1 : d;
    s.f_basis = f_basis;

    for (const auto& row : f_basis) {
        if (row.size() != n) throw std::invalid_argument("basis vector of wrong dimension");
        for (const auto& x : row) {
            if (!x.is_rational() && x.radicand() != s.d)
                throw std::invalid_argument("basis entry outside Q(sqrt(d))");
        }
    }

    Mat<QuadScalar> f = mat_from_rows(f_basis, n);
    if (p > 0 && rank(f) != p) throw std::invalid_argument("F basis is linearly dependent");

    // H = right kernel of the F rows.
    auto h_rows = kernel_basis(f);
    s.h_basis = h_rows;

    // k lies in F iff it is orthogonal to H.  Splitting each constraint
    // <h, k> = 0 into its rational and sqrt(d) coefficients gives rational
    // constraints cutting out the same integer points.
    Mat<Rat> constraints(2 * s.q, n);
    for (std::size_t i = 0; i < s.q; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            constraints(2 * i, j) = h_rows[i][j].rational_part();
            constraints(2 * i + 1, j) = h_rows[i][j].radical_coeff();
        }
    }
    s.gamma = integer_kernel(constraints);
    s.r = s.gamma.basis.size();
    s.covolume_sq = s.gamma.gram_det;
    s.gamma_star = dual_basis(s.gamma);

    // Gamma_perp = integer points orthogonal to V = span(Gamma).
    Mat<Rat> v_rows(s.r, n);
    for (std::size_t i = 0; i < s.r; ++i)
        for (std::size_t j = 0; j < n; ++j) v_rows(i, j) = Rat(s.gamma.basis[i][j]);
    s.gamma_perp = integer_kernel(v_rows);

    // Orthogonal projections onto F and V: B^T (B B^T)^-1 B for basis rows B.
    if (p == 0) {
        s.proj_f = Mat<QuadScalar>(n, n);
    } else {
        Mat<QuadScalar> g = gram_from_rows(f_basis);
        s.proj_f = mat_mul(transpose(f), mat_mul(inverse(g), f));
    }
    if (s.r == 0) {
        s.proj_v = Mat<Rat>(n, n);
    } else {
        std::vector<Vec<Rat>> v_basis;
        for (const auto& row : s.gamma.basis) v_basis.push_back(convert_vec<Rat>(row));
        Mat<Rat> v = mat_from_rows(v_basis, n);
        Mat<Rat> g = gram_from_rows(v_basis);
        s.proj_v = mat_mul(transpose(v), mat_mul(inverse(g), v));
    }
    return s;
}

Vec<Rat> project_v(const SubspaceData& s, const Vec<Rat>& x) { return mat_vec(s.proj_v, x); }

Vec<Int> fiber_coords(const SubspaceData& s, const Vec<Int>& k) {
    if (k.size() != s.n) throw std::invalid_argument("point of wrong dimension");
    Vec<Int> m(s.r, Int(0));
    for (std::size_t j = 0; j < s.r; ++j) {
        Int acc(0);
        for (std::size_t i = 0; i < s.n; ++i) acc += s.gamma.basis[j][i] * k[i];
        m[j] = acc;
    }
    return m;
}

Vec<Rat> dual_point(const SubspaceData& s, const Vec<Int>& m) {
    if (m.size() != s.r) throw std::invalid_argument("fiber coordinates of wrong rank");
    Vec<Rat> g(s.n, Rat(0));
    for (std::size_t j = 0; j < s.r; ++j)
        for (std::size_t i = 0; i < s.n; ++i) g[i] += Rat(m[j]) * s.gamma_star.basis[j][i];
    return g;
}

}  // namespace anisolat
