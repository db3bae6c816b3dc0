#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "zkit/errors.hpp"

namespace zkit {

// Dense matrix over an exact field (Rational in practice). Row-major, tiny
// sizes (Neron-Severi ranks and generator counts stay below ~20), so the
// cubic elimination routines below are all we need.
template <typename Q>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c, Q(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Q(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Q& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Q& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Q> data_;
};

// Fraction-free (Bareiss) elimination. The two-term update
//   M(i,j) <- (M(i,j)*pivot - M(i,k)*M(k,j)) / prev_pivot
// divides exactly, stays in the subring generated by the entries, and after
// step k the pivot M(k,k) equals the leading principal minor of order k+1
// when no row swaps occurred.

// Determinants of the leading principal blocks, in order. Stops early (and
// returns a short vector) when a zero pivot makes the remaining leading
// minors of this elimination path unavailable; that only happens when some
// leading minor is itself zero, which is all the definiteness tests need.
template <typename Q>
std::vector<Q> leading_principal_minors(Matrix<Q> m) {
    std::size_t n = m.rows();
    std::vector<Q> minors;
    Q prev(1);
    for (std::size_t k = 0; k < n; ++k) {
        minors.push_back(m(k, k));
        if (m(k, k) == 0) break;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return minors;
}

// Sylvester test: G is negative definite iff (-1)^k det(G_k) > 0 for every
// leading principal block G_k.
template <typename Q>
bool is_negative_definite(const Matrix<Q>& g) {
    if (g.rows() != g.cols()) fail(errc::dimension_mismatch, "definiteness of non-square matrix");
    if (g.rows() == 0) return true;
    auto minors = leading_principal_minors(g);
    if (minors.size() < g.rows()) return false;
    for (std::size_t k = 0; k < minors.size(); ++k) {
        bool want_negative = (k % 2 == 0);
        if (minors[k] == 0) return false;
        if (want_negative != (minors[k] < 0)) return false;
    }
    return true;
}

template <typename Q>
Q det(Matrix<Q> m) {
    if (m.rows() != m.cols()) fail(errc::dimension_mismatch, "determinant of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return Q(1);
    Q prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return Q(0);
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

namespace detail {

// Fraction-free row echelon reduction of [A | b] with row pivoting. Returns
// the pivot row of each column that received one (or npos). The update keeps
// integer matrices integer; over the rationals it is simply exact.
template <typename Q>
std::vector<std::size_t> bareiss_echelon(Matrix<Q>& a, std::vector<Q>& b) {
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t n = a.rows(), m = a.cols();
    std::vector<std::size_t> pivot_row(m, npos);
    Q prev(1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < n; ++col) {
        std::size_t p = row;
        while (p < n && a(p, col) == 0) ++p;
        if (p == n) continue;
        if (p != row) { a.swap_rows(row, p); std::swap(b[row], b[p]); }
        Q piv = a(row, col);
        for (std::size_t i = row + 1; i < n; ++i) {
            Q head = a(i, col);
            for (std::size_t j = col; j < m; ++j)
                a(i, j) = (a(i, j) * piv - head * a(row, j)) / prev;
            b[i] = (b[i] * piv - head * b[row]) / prev;
        }
        prev = piv;
        pivot_row[col] = row;
        ++row;
    }
    return pivot_row;
}

} // namespace detail

// Solves A x = b for square A; nullopt when A is singular.
template <typename Q>
std::optional<std::vector<Q>> solve_square(Matrix<Q> a, std::vector<Q> b) {
    std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) fail(errc::dimension_mismatch, "solve_square shape");
    auto pivot_row = detail::bareiss_echelon(a, b);
    for (std::size_t c = 0; c < n; ++c)
        if (pivot_row[c] == static_cast<std::size_t>(-1)) return std::nullopt;
    std::vector<Q> x(n, Q(0));
    for (std::size_t i = n; i-- > 0;) {
        Q s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

template <typename Q>
std::size_t rank(Matrix<Q> m) {
    std::vector<Q> dummy(m.rows(), Q(0));
    auto pivot_row = detail::bareiss_echelon(m, dummy);
    std::size_t r = 0;
    for (auto p : pivot_row)
        if (p != static_cast<std::size_t>(-1)) ++r;
    return r;
}

// Solves A x = b where A is n x m with full column rank; checks the unused
// rows for consistency. nullopt when the system is inconsistent or the
// columns are dependent.
template <typename Q>
std::optional<std::vector<Q>> solve_full_column_rank(Matrix<Q> a, std::vector<Q> b) {
    std::size_t n = a.rows(), m = a.cols();
    if (b.size() != n) fail(errc::dimension_mismatch, "solve_full_column_rank shape");
    auto pivot_row = detail::bareiss_echelon(a, b);
    std::size_t r = 0;
    for (std::size_t c = 0; c < m; ++c) {
        if (pivot_row[c] == static_cast<std::size_t>(-1)) return std::nullopt; // dependent columns
        ++r;
    }
    for (std::size_t i = r; i < n; ++i)
        if (b[i] != 0) return std::nullopt; // inconsistent
    std::vector<Q> x(m, Q(0));
    for (std::size_t c = m; c-- > 0;) {
        std::size_t row = pivot_row[c];
        Q s = b[row];
        for (std::size_t j = c + 1; j < m; ++j) s -= a(row, j) * x[j];
        x[c] = s / a(row, c);
    }
    return x;
}

struct Signature {
    int pos = 0;
    int neg = 0;
    int zero = 0;
    bool operator==(const Signature&) const = default;
};

// Signature of a symmetric matrix by exact congruence diagonalization:
// simultaneous row/column operations preserve the signature (Sylvester's law
// of inertia), and the diagonal signs of the result are counted. Zero rows
// that admit no pivot belong to the radical.
template <typename Q>
Signature signature_of_symmetric(Matrix<Q> g) {
    std::size_t n = g.rows();
    if (g.cols() != n) fail(errc::dimension_mismatch, "signature of non-square matrix");
    Signature sig;
    for (std::size_t k = 0; k < n; ++k) {
        if (g(k, k) == 0) {
            std::size_t d = k + 1;
            while (d < n && g(d, d) == 0) ++d;
            if (d < n) {
                g.swap_rows(k, d);
                g.swap_cols(k, d);
            } else {
                // all remaining diagonal entries vanish; look for an
                // off-diagonal entry to fold onto the diagonal
                std::size_t j = k + 1;
                while (j < n && g(k, j) == 0) ++j;
                if (j == n) { ++sig.zero; continue; } // radical vector
                for (std::size_t c = 0; c < n; ++c) g(k, c) += g(j, c);
                for (std::size_t r = 0; r < n; ++r) g(r, k) += g(r, j);
            }
        }
        Q piv = g(k, k);
        if (piv > 0) ++sig.pos; else ++sig.neg;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || g(i, k) == 0) continue;
            Q f = g(i, k) / piv;
            for (std::size_t j = 0; j < n; ++j) g(i, j) -= f * g(k, j);
            for (std::size_t j = 0; j < n; ++j) g(j, i) -= f * g(j, k);
        }
    }
    return sig;
}

} // namespace zkit
