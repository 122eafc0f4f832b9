// linalg.hpp -- dense exact linear algebra over a field type T.
//
// T is Rat or QuadScalar: exact +,-,*,/ and equality against T(0).
// Matrices are row major; all eliminations use the first nonzero pivot in
// column order, so results are deterministic.
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace anisolat {

template <class T>
using Vec = std::vector<T>;

template <class T>
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> data;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T(0)) {}

    T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    Vec<T> row(std::size_t i) const {
        return Vec<T>(data.begin() + i * cols, data.begin() + (i + 1) * cols);
    }
};

template <class T>
Mat<T> mat_from_rows(const std::vector<Vec<T>>& rows, std::size_t cols) {
    Mat<T> m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

template <class T>
Mat<T> identity_mat(std::size_t n) {
    Mat<T> m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
}

template <class T>
Mat<T> transpose(const Mat<T>& a) {
    Mat<T> t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return t;
}

template <class T>
Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix shape mismatch");
    Mat<T> c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (a(i, k) == T(0)) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

template <class T>
Vec<T> mat_vec(const Mat<T>& a, const Vec<T>& x) {
    if (a.cols != x.size()) throw std::invalid_argument("matrix/vector shape mismatch");
    Vec<T> y(a.rows, T(0));
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) y[i] += a(i, j) * x[j];
    return y;
}

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
    T s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Gram matrix of a set of row vectors.
template <class T>
Mat<T> gram_from_rows(const std::vector<Vec<T>>& rows) {
    Mat<T> g(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) g(i, j) = dot(rows[i], rows[j]);
    return g;
}

// Row echelon elimination in place; returns pivot columns.
template <class T>
std::vector<std::size_t> echelon(Mat<T>& a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
        std::size_t p = r;
        while (p < a.rows && a(p, c) == T(0)) ++p;
        if (p == a.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(r, j), a(p, j));
        T inv = T(1) / a(r, c);
        for (std::size_t j = c; j < a.cols; ++j) a(r, j) = a(r, j) * inv;
        for (std::size_t i = 0; i < a.rows; ++i) {
            if (i == r || a(i, c) == T(0)) continue;
            T f = a(i, c);
            for (std::size_t j = c; j < a.cols; ++j) a(i, j) = a(i, j) - f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
std::size_t rank(Mat<T> a) {
    return echelon(a).size();
}

template <class T>
T det(Mat<T> a) {
    if (a.rows != a.cols) throw std::invalid_argument("determinant of non-square matrix");
    T d(1);
    for (std::size_t c = 0; c < a.cols; ++c) {
        std::size_t p = c;
        while (p < a.rows && a(p, c) == T(0)) ++p;
        if (p == a.rows) return T(0);
        if (p != c) {
            for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(c, j), a(p, j));
            d = -d;
        }
        d = d * a(c, c);
        T inv = T(1) / a(c, c);
        for (std::size_t i = c + 1; i < a.rows; ++i) {
            if (a(i, c) == T(0)) continue;
            T f = a(i, c) * inv;
            for (std::size_t j = c; j < a.cols; ++j) a(i, j) = a(i, j) - f * a(c, j);
        }
    }
    return d;
}

// Solves A x = b for square nonsingular A; nullopt when singular.
template <class T>
std::optional<Vec<T>> solve(Mat<T> a, Vec<T> b) {
    if (a.rows != a.cols || b.size() != a.rows) throw std::invalid_argument("solve shape mismatch");
    const std::size_t n = a.rows;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == T(0)) ++p;
        if (p == n) return std::nullopt;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(p, j));
            std::swap(b[c], b[p]);
        }
        T inv = T(1) / a(c, c);
        for (std::size_t j = c; j < n; ++j) a(c, j) = a(c, j) * inv;
        b[c] = b[c] * inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == T(0)) continue;
            T f = a(i, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) = a(i, j) - f * a(c, j);
            b[i] = b[i] - f * b[c];
        }
    }
    return b;
}

template <class T>
Mat<T> inverse(const Mat<T>& a) {
    if (a.rows != a.cols) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = a.rows;
    Mat<T> work(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) work(i, j) = a(i, j);
        work(i, n + i) = T(1);
    }
    auto pivots = echelon(work);
    if (pivots.size() != n) throw std::domain_error("singular matrix");
    Mat<T> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = work(i, n + j);
    return inv;
}

// Basis of {x : A x = 0}, one vector per free column, deterministic.
template <class T>
std::vector<Vec<T>> kernel_basis(Mat<T> a) {
    const std::size_t n = a.cols;
    auto pivots = echelon(a);
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec<T>> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        Vec<T> v(n, T(0));
        v[f] = T(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T, class U>
Mat<T> convert_mat(const Mat<U>& a) {
    Mat<T> out(a.rows, a.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) out(i, j) = T(a(i, j));
    return out;
}

template <class T, class U>
Vec<T> convert_vec(const Vec<U>& v) {
    Vec<T> out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(T(x));
    return out;
}

}  // namespace anisolat
