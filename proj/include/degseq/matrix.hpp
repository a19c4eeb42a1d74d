#pragma once

#include "degseq/rational.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace degseq {

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::int64_t& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    std::int64_t operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    std::vector<std::int64_t> column(int c) const;
    std::vector<std::int64_t> row(int r) const;
    std::vector<std::vector<std::int64_t>> columns() const;

    /// M * x for an integer vector x of length cols().
    std::vector<std::int64_t> apply(std::span<const int> x) const;
    std::vector<std::int64_t> apply(std::span<const std::int64_t> x) const;

    IntMatrix rows_subset(std::span<const int> keep) const;
    IntMatrix transpose() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::int64_t> data_;
};

/// Rank over the rationals.
int exact_rank(const IntMatrix& m);

/// Indices of a maximal set of linearly independent rows (greedy, in index order).
std::vector<int> independent_rows(const IntMatrix& m);

/// Solve A x = b exactly for square nonsingular A; throws std::domain_error if singular.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

}  // namespace degseq
