#include "degseq/lp.hpp"

#include "degseq/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace degseq {

LinearProgram::LinearProgram(int vars)
    : num_vars(vars),
      objective(static_cast<std::size_t>(vars), Rational(0)),
      lower(static_cast<std::size_t>(vars), Rational(0)),
      upper(static_cast<std::size_t>(vars)) {}

void LinearProgram::add_row(std::vector<Rational> coef, Sense sense, Rational rhs) {
    if (static_cast<int>(coef.size()) != num_vars) throw std::invalid_argument("add_row: wrong width");
    rows.push_back({std::move(coef), sense, std::move(rhs)});
}

void LinearProgram::set_bounds(int var, std::optional<Rational> lo, std::optional<Rational> hi) {
    if (lo && hi && *lo > *hi) throw std::invalid_argument("set_bounds: empty interval");
    lower.at(var) = std::move(lo);
    upper.at(var) = std::move(hi);
}

namespace {

template <class T>
struct Arith;

template <>
struct Arith<double> {
    static constexpr bool exact = false;
    static constexpr double eps = 1e-9;
    static bool pos(double v) { return v > eps; }
    static bool neg(double v) { return v < -eps; }
    static bool nonzero(double v) { return std::abs(v) > eps; }
    static double from(const Rational& q) { return to_double(q); }
    static void clean(double& v) {
        if (std::abs(v) < 1e-12) v = 0.0;
    }
};

template <>
struct Arith<Rational> {
    static constexpr bool exact = true;
    static bool pos(const Rational& v) { return v > 0; }
    static bool neg(const Rational& v) { return v < 0; }
    static bool nonzero(const Rational& v) { return v != 0; }
    static Rational from(const Rational& q) { return q; }
    static void clean(Rational&) {}
};

/// How an original variable maps to nonnegative standard-form columns.
struct VarMap {
    Rational shift;  // x = shift + sign * u_pos (- u_neg)
    int sign = 1;
    int pos = -1;
    int neg = -1;  // only for free variables
};

/// Standard form: maximize c.u subject to A u = b, u >= 0, b >= 0.
struct StandardForm {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    std::vector<Rational> c;
    std::vector<int> basis_hint;  // slack column with +1 coefficient usable as initial basis, or -1
    std::vector<int> flipped;     // row multiplied by -1
    int user_rows = 0;            // first rows correspond to lp.rows
    std::vector<VarMap> vars;
    int ncols = 0;
};

StandardForm to_standard(const LinearProgram& lp) {
    StandardForm sf;
    const int nv = lp.num_vars;
    sf.vars.resize(static_cast<std::size_t>(nv));
    std::vector<std::pair<int, Rational>> range_rows;  // (column, width) for u <= hi - lo
    int col = 0;
    for (int k = 0; k < nv; ++k) {
        auto& vm = sf.vars[k];
        const auto& lo = lp.lower[k];
        const auto& hi = lp.upper[k];
        if (lo) {
            vm.shift = *lo;
            vm.pos = col++;
            if (hi) range_rows.emplace_back(vm.pos, *hi - *lo);
        } else if (hi) {
            vm.shift = *hi;
            vm.sign = -1;
            vm.pos = col++;
        } else {
            vm.pos = col++;
            vm.neg = col++;
        }
    }
    const int structural = col;
    int slacks = 0;
    for (const auto& r : lp.rows)
        if (r.sense != Sense::eq) ++slacks;
    slacks += static_cast<int>(range_rows.size());
    sf.ncols = structural + slacks;
    sf.c.assign(static_cast<std::size_t>(sf.ncols), Rational(0));
    const Rational sgn_obj = lp.maximize ? 1 : -1;
    for (int k = 0; k < nv; ++k) {
        const auto& vm = sf.vars[k];
        sf.c[vm.pos] = sgn_obj * lp.objective[k] * vm.sign;
        if (vm.neg >= 0) sf.c[vm.neg] = -sgn_obj * lp.objective[k];
    }

    int slack_col = structural;
    auto push_row = [&](std::vector<Rational> row, Rational rhs, int slack, int slack_sign) {
        bool flip = rhs < 0;
        if (flip) {
            for (auto& v : row) v = -v;
            rhs = -rhs;
            slack_sign = -slack_sign;
        }
        sf.basis_hint.push_back(slack >= 0 && slack_sign == 1 ? slack : -1);
        sf.flipped.push_back(flip ? 1 : 0);
        sf.a.push_back(std::move(row));
        sf.b.push_back(std::move(rhs));
    };

    for (const auto& r : lp.rows) {
        std::vector<Rational> row(static_cast<std::size_t>(sf.ncols), Rational(0));
        Rational rhs = r.rhs;
        for (int k = 0; k < nv; ++k) {
            if (r.coef[k] == 0) continue;
            const auto& vm = sf.vars[k];
            rhs -= r.coef[k] * vm.shift;
            row[vm.pos] += r.coef[k] * vm.sign;
            if (vm.neg >= 0) row[vm.neg] -= r.coef[k];
        }
        int slack = -1, slack_sign = 0;
        if (r.sense != Sense::eq) {
            slack = slack_col++;
            slack_sign = r.sense == Sense::le ? 1 : -1;
            row[slack] = slack_sign;
        }
        push_row(std::move(row), std::move(rhs), slack, slack_sign);
    }
    sf.user_rows = static_cast<int>(lp.rows.size());
    for (auto& [ucol, width] : range_rows) {
        std::vector<Rational> row(static_cast<std::size_t>(sf.ncols), Rational(0));
        row[ucol] = 1;
        const int slack = slack_col++;
        row[slack] = 1;
        push_row(std::move(row), width, slack, 1);
    }
    return sf;
}

template <class T>
class Tableau {
public:
    using A = Arith<T>;

    Tableau(const StandardForm& sf, bool bland_only) : bland_only_(bland_only) {
        m_ = static_cast<int>(sf.a.size());
        n_struct_ = sf.ncols;
        // one extra column per row: artificial, or unused when a slack serves as initial basis
        width_ = n_struct_ + m_;
        t_.assign(static_cast<std::size_t>(m_), std::vector<T>(static_cast<std::size_t>(width_ + 1), T(0)));
        basis_.resize(static_cast<std::size_t>(m_));
        init_col_.resize(static_cast<std::size_t>(m_));
        for (int r = 0; r < m_; ++r) {
            for (int c = 0; c < n_struct_; ++c) t_[r][c] = A::from(sf.a[r][c]);
            t_[r][width_] = A::from(sf.b[r]);
            const int art = n_struct_ + r;
            if (sf.basis_hint[r] >= 0) {
                basis_[r] = sf.basis_hint[r];
                is_art_.push_back(false);
            } else {
                t_[r][art] = T(1);
                basis_[r] = art;
                is_art_.push_back(true);
            }
            init_col_[r] = basis_[r];
        }
        c_.assign(static_cast<std::size_t>(width_), T(0));
        for (int c = 0; c < n_struct_; ++c) c_[c] = A::from(sf.c[c]);
        alive_.assign(static_cast<std::size_t>(m_), true);
    }

    /// Returns false when infeasible.
    bool phase1() {
        bool any_art = false;
        for (bool b : is_art_) any_art = any_art || b;
        if (!any_art) return true;
        std::vector<T> cost(static_cast<std::size_t>(width_), T(0));
        for (int r = 0; r < m_; ++r)
            if (is_art_[r]) cost[n_struct_ + r] = T(-1);
        setup_objective(cost);
        run(/*allow_art=*/true);
        if (A::neg(obj_)) return false;
        // pivot remaining zero-level artificials out of the basis
        for (int r = 0; r < m_; ++r) {
            if (!alive_[r] || !is_artificial(basis_[r])) continue;
            int j = -1;
            for (int c = 0; c < n_struct_; ++c)
                if (A::nonzero(t_[r][c])) {
                    j = c;
                    break;
                }
            if (j < 0)
                alive_[r] = false;  // redundant equality
            else
                pivot(r, j);
        }
        return true;
    }

    /// Returns false when unbounded.
    bool phase2() {
        setup_objective(c_);
        return run(/*allow_art=*/false);
    }

    T objective() const { return obj_; }
    int iterations() const { return iters_; }

    std::vector<T> primal() const {
        std::vector<T> u(static_cast<std::size_t>(n_struct_), T(0));
        for (int r = 0; r < m_; ++r)
            if (alive_[r] && basis_[r] < n_struct_) u[basis_[r]] = t_[r][width_];
        return u;
    }

    /// y for the standard-form rows (after flips); zero on dropped rows.
    std::vector<T> duals() const {
        std::vector<T> y(static_cast<std::size_t>(m_), T(0));
        for (int r = 0; r < m_; ++r) {
            if (!alive_[r]) continue;
            const int col = init_col_[r];
            // reduced cost of the initial basis column is -y_r (its phase-2 cost is 0)
            y[r] = -z_[col];
        }
        return y;
    }

private:
    bool is_artificial(int col) const { return col >= n_struct_; }

    void setup_objective(const std::vector<T>& cost) {
        z_ = cost;
        obj_ = T(0);
        for (int r = 0; r < m_; ++r) {
            if (!alive_[r]) continue;
            const T& cb = cost[basis_[r]];
            if (!A::nonzero(cb)) continue;
            for (int c = 0; c < width_; ++c) z_[c] -= cb * t_[r][c];
            obj_ += cb * t_[r][width_];
        }
        for (int r = 0; r < m_; ++r)
            if (alive_[r]) z_[basis_[r]] = T(0);
    }

    void pivot(int pr, int pc) {
        auto& prow = t_[pr];
        const T inv = T(1) / prow[pc];
        for (auto& v : prow) v *= inv;
        prow[pc] = T(1);
        for (int r = 0; r < m_; ++r) {
            if (r == pr || !alive_[r]) continue;
            auto& row = t_[r];
            if (!A::nonzero(row[pc])) {
                row[pc] = T(0);
                continue;
            }
            const T f = row[pc];
            for (int c = 0; c <= width_; ++c) {
                if (!A::nonzero(prow[c])) continue;
                row[c] -= f * prow[c];
                A::clean(row[c]);
            }
            row[pc] = T(0);
        }
        if (A::nonzero(z_[pc])) {
            const T f = z_[pc];
            for (int c = 0; c < width_; ++c) {
                if (!A::nonzero(prow[c])) continue;
                z_[c] -= f * prow[c];
                A::clean(z_[c]);
            }
            obj_ += f * prow[width_];
            z_[pc] = T(0);
        }
        basis_[pr] = pc;
        ++iters_;
    }

    /// Maximize; returns false on unboundedness.
    bool run(bool allow_art) {
        const int bland_after = 5 * (m_ + width_);
        const int cap = A::exact ? 1000000 : 50 * (m_ + width_) + 1000;
        for (int it = 0;; ++it) {
            if (it > cap) {
                if constexpr (A::exact)
                    throw LpFailure("simplex iteration cap exceeded in exact mode");
                else
                    throw NumericalFailure("simplex iteration cap exceeded");
            }
            const bool bland = bland_only_ || it >= bland_after;
            int enter = -1;
            for (int c = 0; c < width_; ++c) {
                if (!allow_art && is_artificial(c)) continue;
                if (!A::pos(z_[c])) continue;
                if (bland) {
                    enter = c;
                    break;
                }
                if (enter < 0 || z_[c] > z_[enter]) enter = c;
            }
            if (enter < 0) return true;
            int leave = -1;
            T best{};
            for (int r = 0; r < m_; ++r) {
                if (!alive_[r] || !A::pos(t_[r][enter])) continue;
                T ratio = t_[r][width_] / t_[r][enter];
                if (leave < 0) {
                    leave = r;
                    best = ratio;
                    continue;
                }
                if constexpr (A::exact) {
                    if (ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
                        leave = r;
                        best = ratio;
                    }
                } else {
                    if (ratio < best - A::eps || (std::abs(ratio - best) <= A::eps && basis_[r] < basis_[leave])) {
                        leave = r;
                        best = ratio;
                    }
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    bool bland_only_;
    int m_ = 0;
    int n_struct_ = 0;
    int width_ = 0;
    std::vector<std::vector<T>> t_;
    std::vector<int> basis_;
    std::vector<int> init_col_;
    std::vector<bool> is_art_;
    std::vector<bool> alive_;
    std::vector<T> c_;
    std::vector<T> z_;
    T obj_{};
    int iters_ = 0;
};

template <class T>
std::vector<T> recover_x(const StandardForm& sf, const std::vector<T>& u) {
    using A = Arith<T>;
    std::vector<T> x(sf.vars.size());
    for (std::size_t k = 0; k < sf.vars.size(); ++k) {
        const auto& vm = sf.vars[k];
        x[k] = A::from(vm.shift) + T(vm.sign) * u[vm.pos];
        if (vm.neg >= 0) x[k] -= u[vm.neg];
    }
    return x;
}

double max_residual(const LinearProgram& lp, const std::vector<double>& x) {
    double worst = 0.0;
    for (const auto& r : lp.rows) {
        double lhs = 0.0;
        for (int k = 0; k < lp.num_vars; ++k)
            if (r.coef[k] != 0) lhs += to_double(r.coef[k]) * x[k];
        const double rhs = to_double(r.rhs);
        double viol = 0.0;
        if (r.sense == Sense::eq) viol = std::abs(lhs - rhs);
        if (r.sense == Sense::le) viol = std::max(0.0, lhs - rhs);
        if (r.sense == Sense::ge) viol = std::max(0.0, rhs - lhs);
        worst = std::max(worst, viol / (1.0 + std::abs(rhs)));
    }
    for (int k = 0; k < lp.num_vars; ++k) {
        if (lp.lower[k]) worst = std::max(worst, to_double(*lp.lower[k]) - x[k]);
        if (lp.upper[k]) worst = std::max(worst, x[k] - to_double(*lp.upper[k]));
    }
    return worst;
}

template <class T>
LpSolution solve_with(const LinearProgram& lp, const StandardForm& sf) {
    Tableau<T> tab(sf, Arith<T>::exact);
    LpSolution sol;
    if (!tab.phase1()) {
        sol.status = LpStatus::infeasible;
        sol.iterations = tab.iterations();
        return sol;
    }
    if (!tab.phase2()) {
        sol.status = LpStatus::unbounded;
        sol.iterations = tab.iterations();
        return sol;
    }
    sol.status = LpStatus::optimal;
    sol.iterations = tab.iterations();
    const auto x = recover_x(sf, tab.primal());
    const auto y = tab.duals();
    T obj(0);
    for (int k = 0; k < lp.num_vars; ++k) obj += Arith<T>::from(lp.objective[k]) * x[k];
    sol.x.reserve(x.size());
    for (const auto& v : x) sol.x.push_back(to_double(v));
    sol.objective_value = to_double(obj);
    const double dsign = lp.maximize ? 1.0 : -1.0;
    for (int r = 0; r < sf.user_rows; ++r) {
        double v = to_double(y[r]);
        if (sf.flipped[r]) v = -v;
        sol.duals.push_back(dsign * v);
    }
    if constexpr (Arith<T>::exact) {
        sol.x_exact = x;
        sol.objective_exact = obj;
    } else {
        if (max_residual(lp, sol.x) > 1e-7) throw NumericalFailure("float simplex lost primal feasibility");
    }
    return sol;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, LpMode mode) {
    if (static_cast<int>(lp.objective.size()) != lp.num_vars) throw std::invalid_argument("solve_lp: objective width");
    const StandardForm sf = to_standard(lp);
    if (mode == LpMode::exact) return solve_with<Rational>(lp, sf);
    return solve_with<double>(lp, sf);
}

}  // namespace degseq
