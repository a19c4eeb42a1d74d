#include "degseq/errors.hpp"
#include "degseq/lp.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace degseq;

TEST_SUITE_BEGIN("linear-programming");

namespace {

LinearProgram one_var(Sense sense, int rhs) {
    LinearProgram lp(1);
    lp.objective = {Rational(1)};
    lp.add_row({Rational(1)}, sense, Rational(rhs));
    return lp;
}

}  // namespace

TEST_CASE("bounded single variable") {
    for (auto mode : {LpMode::floating, LpMode::exact}) {
        const auto sol = solve_lp(one_var(Sense::le, 1), mode);
        CHECK(sol.status == LpStatus::optimal);
        CHECK(sol.x[0] == doctest::Approx(1.0));
        CHECK(sol.objective_value == doctest::Approx(1.0));
    }
    const auto ex = solve_lp(one_var(Sense::le, 1), LpMode::exact);
    CHECK(ex.x_exact[0] == 1);
}

TEST_CASE("unbounded single variable") {
    LinearProgram lp(1);
    lp.objective = {Rational(1)};
    for (auto mode : {LpMode::floating, LpMode::exact}) CHECK(solve_lp(lp, mode).status == LpStatus::unbounded);
}

TEST_CASE("infeasible single variable") {
    LinearProgram lp(1);
    lp.add_row({Rational(1)}, Sense::le, Rational(-1));
    for (auto mode : {LpMode::floating, LpMode::exact}) CHECK(solve_lp(lp, mode).status == LpStatus::infeasible);
}

TEST_CASE("bounds, free variables and minimization") {
    // min x + y s.t. x - y = 1/3, -2 <= x <= 5, y free, y >= -1 via row
    LinearProgram lp(2);
    lp.maximize = false;
    lp.objective = {Rational(1), Rational(1)};
    lp.set_bounds(0, Rational(-2), Rational(5));
    lp.set_bounds(1, std::nullopt, std::nullopt);
    lp.add_row({Rational(1), Rational(-1)}, Sense::eq, Rational(1, 3));
    lp.add_row({Rational(0), Rational(1)}, Sense::ge, Rational(-1));
    const auto sol = solve_lp(lp, LpMode::exact);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.x_exact[0] == Rational(-2, 3));
    CHECK(sol.x_exact[1] == -1);
    CHECK(sol.objective_exact == Rational(-5, 3));
}

TEST_CASE("redundant equalities are tolerated") {
    LinearProgram lp(3);
    lp.objective = {Rational(1), Rational(2), Rational(3)};
    lp.add_row({Rational(1), Rational(1), Rational(1)}, Sense::eq, Rational(4));
    lp.add_row({Rational(2), Rational(2), Rational(2)}, Sense::eq, Rational(8));
    lp.add_row({Rational(1), Rational(0), Rational(0)}, Sense::eq, Rational(1));
    for (auto mode : {LpMode::floating, LpMode::exact}) {
        const auto sol = solve_lp(lp, mode);
        REQUIRE(sol.status == LpStatus::optimal);
        CHECK(sol.objective_value == doctest::Approx(10.0));
    }
}

TEST_CASE("degenerate cycling example terminates") {
    // Beale's example, which cycles under textbook Dantzig pricing without anti-cycling.
    LinearProgram lp(4);
    lp.objective = {Rational(3, 4), Rational(-150), Rational(1, 50), Rational(-6)};
    lp.add_row({Rational(1, 4), Rational(-60), Rational(-1, 25), Rational(9)}, Sense::le, Rational(0));
    lp.add_row({Rational(1, 2), Rational(-90), Rational(-1, 50), Rational(3)}, Sense::le, Rational(0));
    lp.add_row({Rational(0), Rational(0), Rational(1), Rational(0)}, Sense::le, Rational(1));
    for (auto mode : {LpMode::floating, LpMode::exact}) {
        const auto sol = solve_lp(lp, mode);
        REQUIRE(sol.status == LpStatus::optimal);
        CHECK(sol.objective_value == doctest::Approx(0.05));
    }
}

TEST_CASE("weak duality and exact/float agreement on random LPs") {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> coef(-5, 5), rhs(-3, 12), size(1, 30);
    int optimal = 0, checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int nv = size(rng);
        const int nr = 1 + size(rng) % 12;
        LinearProgram lp(nv);
        for (auto& c : lp.objective) c = coef(rng);
        for (int r = 0; r < nr; ++r) {
            std::vector<Rational> row(static_cast<std::size_t>(nv));
            for (auto& v : row) v = coef(rng);
            lp.add_row(std::move(row), Sense::le, Rational(rhs(rng)));
        }
        // Cap every variable half of the time so that bounded problems are common.
        if (trial % 2 == 0) {
            std::vector<Rational> ones(static_cast<std::size_t>(nv), Rational(1));
            lp.add_row(std::move(ones), Sense::le, Rational(10));
        }
        const auto ex = solve_lp(lp, LpMode::exact);
        const auto fl = solve_lp(lp, LpMode::floating);
        CHECK(ex.status == fl.status);
        if (ex.status != LpStatus::optimal || fl.status != LpStatus::optimal) continue;
        ++optimal;
        const double obj = fl.objective_value;
        CHECK(std::abs(obj - ex.objective_value) <= 1e-6 * (1.0 + std::abs(obj)));

        // duals: y >= 0 and A^T y >= c for max c.x, A x <= b, x >= 0
        const auto& y = fl.duals;
        REQUIRE(y.size() == lp.rows.size());
        double by = 0.0;
        bool feasible = true;
        for (std::size_t r = 0; r < y.size(); ++r) {
            feasible = feasible && y[r] >= -1e-7;
            by += y[r] * to_double(lp.rows[r].rhs);
        }
        for (int k = 0; k < nv; ++k) {
            double aty = 0.0;
            for (std::size_t r = 0; r < y.size(); ++r) aty += to_double(lp.rows[r].coef[k]) * y[r];
            feasible = feasible && aty >= to_double(lp.objective[k]) - 1e-7;
        }
        CHECK(feasible);
        CHECK(obj - by <= 1e-6 * (1.0 + std::abs(obj)));
        ++checked;
    }
    CHECK(optimal > 40);
    CHECK(checked == optimal);
}

TEST_SUITE_END();
