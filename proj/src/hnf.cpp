#include "anisolat/hnf.hpp"

namespace anisolat {

namespace {

void add_row_multiple(ZMat& m, std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t j = 0; j < m.cols; ++j) m(dst, j) += f * m(src, j);
}

void swap_rows(ZMat& m, std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(i, j), m(k, j));
}

void negate_row(ZMat& m, std::size_t i) {
    for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = -m(i, j);
}

// Replace rows r, i by unimodular combinations so that column c holds
// gcd(a, b) at row r and 0 at row i.
void gcd_rows(ZMat& a, ZMat* u, std::size_t r, std::size_t i, std::size_t c) {
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a(r, c).get_mpz_t(),
               a(i, c).get_mpz_t());
    Int p = a(r, c) / g;
    Int q = a(i, c) / g;
    // (row_r, row_i) <- (s*row_r + t*row_i, -q*row_r + p*row_i); det = sp+tq = 1.
    auto apply = [&](ZMat& m) {
        Vec<Int> nr(m.cols), ni(m.cols);
        for (std::size_t j = 0; j < m.cols; ++j) {
            nr[j] = s * m(r, j) + t * m(i, j);
            ni[j] = p * m(i, j) - q * m(r, j);
        }
        for (std::size_t j = 0; j < m.cols; ++j) {
            m(r, j) = nr[j];
            m(i, j) = ni[j];
        }
    };
    apply(a);
    if (u) apply(*u);
}

}  // namespace

void hnf_rows(ZMat& a, ZMat* u) {
    if (u) *u = identity_mat<Int>(a.rows);
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
        std::size_t p = r;
        while (p < a.rows && a(p, c) == 0) ++p;
        if (p == a.rows) continue;
        if (p != r) {
            swap_rows(a, r, p);
            if (u) swap_rows(*u, r, p);
        }
        for (std::size_t i = r + 1; i < a.rows; ++i) {
            if (a(i, c) != 0) gcd_rows(a, u, r, i, c);
        }
        if (a(r, c) < 0) {
            negate_row(a, r);
            if (u) negate_row(*u, r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
            if (q != 0) {
                add_row_multiple(a, i, r, -q);
                if (u) add_row_multiple(*u, i, r, -q);
            }
        }
        ++r;
    }
}

std::vector<Vec<Int>> integer_kernel_of(const ZMat& c) {
    // Row-reduce the transpose with a transform: rows of u that map to zero
    // rows of the HNF span the kernel, and they inherit saturation because
    // u is unimodular.
    ZMat a = transpose(c);
    ZMat u;
    hnf_rows(a, &u);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < a.rows; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < a.cols; ++j) {
            if (a(i, j) != 0) {
                zero = false;
                break;
            }
        }
        if (!zero) nonzero = i + 1;
    }
    ZMat k(a.rows - nonzero, c.cols);
    for (std::size_t i = nonzero; i < a.rows; ++i)
        for (std::size_t j = 0; j < c.cols; ++j) k(i - nonzero, j) = u(i, j);
    hnf_rows(k);
    std::vector<Vec<Int>> basis;
    basis.reserve(k.rows);
    for (std::size_t i = 0; i < k.rows; ++i) basis.push_back(k.row(i));
    return basis;
}

}  // namespace anisolat
