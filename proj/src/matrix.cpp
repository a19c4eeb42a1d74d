#include "degseq/matrix.hpp"

#include <stdexcept>

namespace degseq {

std::vector<std::int64_t> IntMatrix::column(int c) const {
    std::vector<std::int64_t> out(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

std::vector<std::int64_t> IntMatrix::row(int r) const {
    const auto b = data_.begin() + static_cast<std::ptrdiff_t>(r) * cols_;
    return {b, b + cols_};
}

std::vector<std::vector<std::int64_t>> IntMatrix::columns() const {
    std::vector<std::vector<std::int64_t>> out;
    out.reserve(static_cast<std::size_t>(cols_));
    for (int c = 0; c < cols_; ++c) out.push_back(column(c));
    return out;
}

namespace {

template <class T>
std::vector<std::int64_t> apply_impl(const IntMatrix& m, std::span<const T> x) {
    if (static_cast<int>(x.size()) != m.cols()) throw std::invalid_argument("IntMatrix::apply: size mismatch");
    std::vector<std::int64_t> out(static_cast<std::size_t>(m.rows()), 0);
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out[r] += m(r, c) * static_cast<std::int64_t>(x[c]);
    return out;
}

/// Row echelon form in place; returns the original indices of the pivot rows.
std::vector<int> eliminate(std::vector<std::vector<Rational>>& a, int cols) {
    const int rows = static_cast<int>(a.size());
    std::vector<int> order(static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r) order[r] = r;
    std::vector<int> pivots;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int p = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r][c] != 0) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(a[p], a[rank]);
        std::swap(order[p], order[rank]);
        for (int r = rank + 1; r < rows; ++r) {
            if (a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[rank][c];
            for (int k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
        }
        pivots.push_back(order[rank]);
        ++rank;
    }
    return pivots;
}

std::vector<std::vector<Rational>> to_rational(const IntMatrix& m) {
    std::vector<std::vector<Rational>> a(static_cast<std::size_t>(m.rows()),
                                         std::vector<Rational>(static_cast<std::size_t>(m.cols())));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) a[r][c] = m(r, c);
    return a;
}

}  // namespace

std::vector<std::int64_t> IntMatrix::apply(std::span<const int> x) const { return apply_impl(*this, x); }
std::vector<std::int64_t> IntMatrix::apply(std::span<const std::int64_t> x) const { return apply_impl(*this, x); }

IntMatrix IntMatrix::rows_subset(std::span<const int> keep) const {
    IntMatrix out(static_cast<int>(keep.size()), cols_);
    for (std::size_t k = 0; k < keep.size(); ++k)
        for (int c = 0; c < cols_; ++c) out(static_cast<int>(k), c) = (*this)(keep[k], c);
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix out(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

int exact_rank(const IntMatrix& m) {
    auto a = to_rational(m);
    return static_cast<int>(eliminate(a, m.cols()).size());
}

std::vector<int> independent_rows(const IntMatrix& m) {
    std::vector<int> chosen;
    const int rows = m.rows();
    const int cols = m.cols();
    // Incremental basis of accepted rows in echelon form.
    std::vector<std::vector<Rational>> basis;
    std::vector<int> lead;
    for (int r = 0; r < rows; ++r) {
        std::vector<Rational> v(static_cast<std::size_t>(cols));
        for (int c = 0; c < cols; ++c) v[c] = m(r, c);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (v[lead[b]] == 0) continue;
            const Rational f = v[lead[b]] / basis[b][lead[b]];
            for (int c = 0; c < cols; ++c) v[c] -= f * basis[b][c];
        }
        int l = -1;
        for (int c = 0; c < cols; ++c)
            if (v[c] != 0) {
                l = c;
                break;
            }
        if (l < 0) continue;
        basis.push_back(std::move(v));
        lead.push_back(l);
        chosen.push_back(r);
    }
    return chosen;
}

std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const int n = static_cast<int>(a.size());
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (a[r][c] != 0) {
                p = r;
                break;
            }
        if (p < 0) throw std::domain_error("solve_exact: singular matrix");
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (int r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[c][c];
            for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<Rational> x(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) x[r] = b[r] / a[r][r];
    return x;
}

}  // namespace degseq
