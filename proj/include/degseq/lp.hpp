#pragma once

#include "degseq/rational.hpp"

#include <optional>
#include <vector>

namespace degseq {

enum class Sense { le, ge, eq };
enum class LpStatus { optimal, infeasible, unbounded };
enum class LpMode { floating, exact };

/// Maximize (or minimize) c.x subject to rows a_r.x (sense_r) b_r and per-variable bounds.
/// Coefficients are rational so exact mode sees the data without rounding.
struct LinearProgram {
    struct Row {
        std::vector<Rational> coef;
        Sense sense;
        Rational rhs;
    };

    int num_vars = 0;
    bool maximize = true;
    std::vector<Rational> objective;
    std::vector<Row> rows;
    std::vector<std::optional<Rational>> lower;  // nullopt = -inf
    std::vector<std::optional<Rational>> upper;  // nullopt = +inf

    /// All variables default to [0, +inf).
    explicit LinearProgram(int vars);

    void add_row(std::vector<Rational> coef, Sense sense, Rational rhs);
    void set_bounds(int var, std::optional<Rational> lo, std::optional<Rational> hi);
};

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> x;
    double objective_value = 0.0;
    /// Row multipliers; with the problem read as max c.x, y is dual feasible for
    /// rows written as a.x <= b after sign normalization (see solve_lp docs).
    std::vector<double> duals;

    // Filled in exact mode only.
    std::vector<Rational> x_exact;
    Rational objective_exact;
    int iterations = 0;
};

/// Dense two-phase tableau simplex.
/// exact: rational pivoting with Bland's rule throughout (terminates on every input).
/// floating: Dantzig pricing, Bland after 5(m+n) pivots, 1e-9 tolerances;
/// throws NumericalFailure when the iteration cap is hit or the result fails its residual check.
///
/// Duals are reported for rows of the LP as given; for an optimal maximization they satisfy
/// y_r >= 0 on <= rows, y_r <= 0 on >= rows, and c.x = b.y when no bounds are active.
LpSolution solve_lp(const LinearProgram& lp, LpMode mode);

}  // namespace degseq
