#include "degseq/design.hpp"
#include "degseq/tables.hpp"

#include <doctest.h>

#include <random>

using namespace degseq;

TEST_SUITE_BEGIN("design-matrices");

namespace {

IntMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    return m;
}

int binom2(int n) { return n * (n - 1) / 2; }

}  // namespace

TEST_CASE("beta design") {
    const auto a = beta_design(4);
    CHECK(a.entries == from_rows({{1, 1, 1, 0, 0, 0},
                                  {1, 0, 0, 1, 1, 0},
                                  {0, 1, 0, 1, 0, 1},
                                  {0, 0, 1, 0, 1, 1}}));
    CHECK(a.col_labels.front() == "(1,2)");
    CHECK(a.col_labels.back() == "(3,4)");
    const auto a2 = beta_design(2);
    CHECK(a2.entries == from_rows({{1}, {1}}));
    for (int n = 2; n <= 9; ++n) {
        const auto m = beta_design(n);
        for (int c = 0; c < m.cols(); ++c) {
            int s = 0;
            for (int r = 0; r < m.rows(); ++r) s += static_cast<int>(m.entries(r, c));
            CHECK(s == 2);
        }
        for (int r = 0; r < m.rows(); ++r) {
            int s = 0;
            for (int c = 0; c < m.cols(); ++c) s += static_cast<int>(m.entries(r, c));
            CHECK(s == n - 1);
        }
    }
}

TEST_CASE("Cayley design") {
    const auto c = cayley_design(4, false);
    CHECK(c.entries == from_rows({
                           {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                           {0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0},
                           {0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0},
                           {0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0},
                           {0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0},
                           {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1},
                           {1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0},
                           {1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0},
                           {0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0},
                           {0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0},
                           {0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0},
                           {0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0},
                           {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1},
                           {0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1},
                       }));
    for (int n = 3; n <= 7; ++n) {
        const auto red = cayley_design(n, true);
        CHECK(red.rows() == binom2(n) + n);
        CHECK(red.cols() == n * (n - 1));
        CHECK(red.rank() == binom2(n) + n);
        const auto full = cayley_design(n, false);
        CHECK(full.rows() == 2 * n + binom2(n));
    }
}

TEST_CASE("Cayley statistics reproduce trials, degrees and complementary degrees") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 7);
        std::vector<int> trials(static_cast<std::size_t>(binom2(n))), counts(trials.size());
        for (std::size_t p = 0; p < trials.size(); ++p) {
            trials[p] = 1 + static_cast<int>(rng() % 5);
            counts[p] = static_cast<int>(rng() % static_cast<unsigned>(trials[p] + 1));
        }
        const EdgeCountTable t(n, trials, counts);
        const auto stats = degree_stats(t);
        const auto y = cayley_design(n, false).entries.apply(t.lifted());
        const int np = binom2(n);
        for (int p = 0; p < np; ++p) CHECK(y[p] == trials[p]);
        for (int i = 0; i < n; ++i) {
            std::int64_t total = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) total += t.trials(i, j);
            CHECK(y[np + i] == stats.d[i]);
            CHECK(y[np + n + i] == total - stats.d[i]);
        }
        const auto ya = beta_design(n).entries.apply(t.counts_by_pair());
        for (int i = 0; i < n; ++i) CHECK(ya[i] == stats.d[i]);
    }
}

TEST_CASE("Poisson design") {
    const auto a = poisson_design(4);
    CHECK(a.entries == from_rows({
                           {1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0},
                           {0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0},
                           {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0},
                           {0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1},
                           {0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0},
                           {1, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0},
                           {0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1},
                           {0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0},
                       }));
    CHECK(a.rank() == 7);
    for (int n = 3; n <= 7; ++n) {
        const auto m = poisson_design(n);
        CHECK(m.rank() == 2 * n - 1);
        for (int c = 0; c < m.cols(); ++c) {
            int s = 0;
            for (int r = 0; r < m.rows(); ++r) s += static_cast<int>(m.entries(r, c));
            CHECK(s == 2);
        }
    }
    // in/out degrees of random directed count tables
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 7);
        auto t = DirectedCountTable::zeros(n);
        for (auto [i, j] : lifted_list(n)) t.set_count(i, j, static_cast<int>(rng() % 4));
        const auto y = poisson_design(n).entries.apply(t.counts_lifted());
        for (int i = 0; i < n; ++i) {
            std::int64_t out = 0, in = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) {
                    out += t.count(i, j);
                    in += t.count(j, i);
                }
            CHECK(y[i] == out);
            CHECK(y[n + i] == in);
        }
    }
}

TEST_CASE("Bradley-Terry design") {
    const auto bt = bt_design(3);
    CHECK(bt.rows() == 6);
    CHECK(bt.cols() == 6);
    const auto c = cayley_design(3, true);
    for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 6; ++col) CHECK(bt.entries(r, col) == c.entries(r, col));
    for (int n = 2; n <= 6; ++n) {
        const auto m = bt_design(n);
        const int np = binom2(n);
        for (int i = 0; i < n; ++i) {
            int s = 0;
            for (int col = 0; col < m.cols(); ++col) s += static_cast<int>(m.entries(np + i, col));
            CHECK(s == n - 1);
        }
    }
    const auto b4 = bt_design(4);
    const int col12 = lifted_index(0, 1, 4);
    for (int r = 0; r < b4.rows(); ++r) CHECK(b4.entries(r, col12) == ((r == 0 || r == 6 + 0) ? 1 : 0));
}

TEST_CASE("Rasch design") {
    const auto r22 = rasch_design(2, 2);
    CHECK(r22.rows() == 8);
    CHECK(r22.cols() == 8);
    CHECK(r22.rank() == 7);
    const auto r23 = rasch_design(2, 3);
    CHECK(r23.rows() == 11);
    CHECK(r23.cols() == 12);
    for (int k = 2; k <= 4; ++k)
        for (int l = 2; l <= 4; ++l) CHECK(rasch_design(k, l).rank() == k * l + k + l - 1);
    // only subject-item columns
    for (const auto& label : r23.col_labels) {
        const int a = label[1] - '0', b = label[3] - '0';
        CHECK(((a <= 2) != (b <= 2)));
    }
}

TEST_CASE("p1 designs") {
    const auto e3 = p1_design(3, P1Variant::edge);
    CHECK(e3.entries == from_rows({
                            {1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0},
                            {0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0},
                            {0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1},
                            {0, 1, 1, 2, 0, 1, 1, 2, 0, 1, 1, 2},
                            {0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0},
                            {0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 1},
                            {0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1},
                            {0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0},
                            {0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1},
                            {0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1},
                            {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1},
                            {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0},
                            {0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1},
                            {0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1},
                        }));
    const auto z3 = p1_design(3, P1Variant::zero);
    CHECK(z3.rows() == 10);
    CHECK(z3.cols() == 12);
    for (int r = 0; r < 10; ++r)
        for (int c = 0; c < 12; ++c) CHECK(z3.entries(r, c) == e3.entries(r, c));
    CHECK(p1_design(3, P1Variant::constant).rows() == 11);

    for (int n = 3; n <= 6; ++n)
        for (auto v : {P1Variant::zero, P1Variant::constant, P1Variant::edge}) {
            const auto m = p1_design(n, v);
            for (int p = 0; p < binom2(n); ++p) {
                int s = 0;
                for (int c = 0; c < m.cols(); ++c) {
                    CHECK(m.entries(p, c) >= 0);
                    CHECK(m.entries(p, c) <= 2);
                    s += static_cast<int>(m.entries(p, c));
                }
                CHECK(s == 4);
                CHECK(m.entries(binom2(n), 4 * p + 3) == 2);
            }
        }
}

TEST_CASE("p1 statistics match dyad tallies") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 3 + static_cast<int>(rng() % 6);
        std::vector<std::uint8_t> states(static_cast<std::size_t>(binom2(n)));
        for (auto& s : states) s = static_cast<std::uint8_t>(rng() % 4);
        const DyadTable t(n, states);
        const auto y = p1_design(n, P1Variant::edge).entries.apply(t.indicator());
        const int np = binom2(n);
        std::int64_t edges = 0, mutual = 0;
        std::vector<std::int64_t> out(static_cast<std::size_t>(n)), in(out), mut(out);
        for (auto [i, j] : pair_list(n)) {
            const int s = t.state(i, j);
            const bool ij = s & 1, ji = s & 2;
            edges += ij + ji;
            out[i] += ij;
            in[j] += ij;
            out[j] += ji;
            in[i] += ji;
            if (ij && ji) {
                ++mutual;
                ++mut[i];
                ++mut[j];
            }
        }
        for (int p = 0; p < np; ++p) CHECK(y[p] == 1);
        CHECK(y[np] == edges);
        for (int i = 0; i < n; ++i) {
            CHECK(y[np + 1 + i] == out[i]);
            CHECK(y[np + 1 + n + i] == in[i]);
            CHECK(y[np + 2 + 2 * n + i] == mut[i]);
        }
        CHECK(y[np + 1 + 2 * n] == mutual);
    }
}

TEST_SUITE_END();
