#include "degseq/design.hpp"
#include "degseq/enumeration.hpp"
#include "degseq/errors.hpp"
#include "degseq/geometry.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace degseq;

namespace {

std::vector<Rational> lifted_statistic(const EdgeCountTable& t, const DesignMatrix& C) {
    const auto s = C.entries.apply(t.lifted());
    return {s.begin(), s.end()};
}

bool has_split(const std::vector<FacetInequality>& fs, std::vector<int> S, std::vector<int> T) {
    return std::find(fs.begin(), fs.end(), FacetInequality::split(std::move(S), std::move(T))) != fs.end();
}

}  // namespace

TEST_SUITE_BEGIN("polytope-geometry");

TEST_CASE("g values") {
    const std::vector<Rational> y{3, 3, 3, 3};
    CHECK(g_value(std::vector<int>{0}, std::vector<int>{1}, y, 4) == 2);
    const std::vector<Rational> d{1, 1, 2, 2};
    CHECK(g_value(std::vector<int>{2, 3}, std::vector<int>{0, 1}, d, 4) == 0);
    const auto s5 = degree_stats(fixtures::split5());
    CHECK(g_value(std::vector<int>{1, 2, 3}, std::vector<int>{0, 4}, s5.d_tilde, 5) == 0);
}

TEST_CASE("inequality family sizes") {
    // n = 4: 8 degree bounds and the 2^4 - 2 splits covering every node
    CHECK(degree_polytope_inequalities(4).size() == 22);
    CHECK(degree_polytope_inequalities(3).size() == 6);
    CHECK_THROWS_AS(degree_polytope_inequalities(13), SizeError);
}

TEST_CASE("exhaustive boundary check") {
    SUBCASE("split facet example") {
        const auto v = mp_boundary_check(degree_stats(fixtures::boundary4()), 4);
        CHECK(v.position == Position::boundary);
        CHECK(has_split(v.tight, {2, 3}, {0, 1}));
        CHECK(v.violated.empty());
    }
    SUBCASE("interior example") {
        const auto v = mp_boundary_check(degree_stats(fixtures::interior4()), 4);
        CHECK(v.position == Position::interior);
        CHECK(v.tight.empty());
    }
    SUBCASE("complete graph") {
        auto t = EdgeCountTable::zeros(4, 1);
        for (auto [i, j] : pair_list(4)) t.set_count(i, j, 1);
        const auto v = mp_boundary_check(degree_stats(t), 4);
        CHECK(v.position == Position::boundary);
        for (int i = 0; i < 4; ++i)
            CHECK(std::find(v.tight.begin(), v.tight.end(), FacetInequality::upper_bound(i)) != v.tight.end());
    }
    SUBCASE("every simple graph on three nodes is a boundary point") {
        for (unsigned bits = 0; bits < 8; ++bits)
            CHECK(mp_boundary_check(degree_stats(fixtures::graph_from_bits(3, bits)), 3).position == Position::boundary);
    }
    SUBCASE("three nodes with repeated trials can be interior") {
        auto t = EdgeCountTable::zeros(3, 2);
        for (auto [i, j] : pair_list(3)) t.set_count(i, j, 1);
        CHECK(mp_boundary_check(degree_stats(t), 3).position == Position::interior);
        const auto C = cayley_design(3, true);
        CHECK(interior_lp_check(lifted_statistic(t, C), C).interior);
    }
    SUBCASE("two nodes") {
        const std::vector<Rational> mid{Rational(1, 2), Rational(1, 2)};
        CHECK(mp_boundary_check(mid, 2).position == Position::interior);
        const std::vector<Rational> end{1, 1};
        CHECK(mp_boundary_check(end, 2).position == Position::boundary);
    }
    SUBCASE("points outside") {
        const std::vector<Rational> y{3, 3, 3, 0};
        CHECK(mp_boundary_check(y, 4).position == Position::outside);
    }
    SUBCASE("size cap") {
        CHECK_THROWS_AS(mp_boundary_check(std::vector<Rational>(13, Rational(1)), 13), SizeError);
    }
}

TEST_CASE("interior LP") {
    const auto C = cayley_design(4, true);
    SUBCASE("boundary example") {
        const auto v = interior_lp_check(lifted_statistic(fixtures::boundary4(), C), C);
        CHECK_FALSE(v.interior);
        CHECK(v.s_star == 0);
    }
    SUBCASE("interior example") {
        const auto v = interior_lp_check(lifted_statistic(fixtures::interior4(), C), C);
        CHECK(v.interior);
        CHECK(v.s_star > 0);
    }
    SUBCASE("barycenter") {
        for (int N : {2, 4, 6}) {
            auto t = EdgeCountTable::zeros(4, N);
            for (auto [i, j] : pair_list(4)) t.set_count(i, j, N / 2);
            const auto v = interior_lp_check(lifted_statistic(t, C), C);
            CHECK(v.s_star == Rational(N, 2));
        }
    }
    SUBCASE("float mode agrees and is flagged") {
        const auto v = interior_lp_check(lifted_statistic(fixtures::interior4(), C), C, LpMode::floating);
        CHECK(v.interior);
        CHECK_FALSE(v.certified);
    }
}

TEST_CASE("exhaustive and LP verdicts agree on all simple graphs") {
    for (int n : {4, 5}) {
        const auto C = cayley_design(n, true);
        int disagreements = 0;
        for (unsigned bits = 0; bits < (1u << pair_count(n)); ++bits) {
            const auto t = fixtures::graph_from_bits(n, bits);
            const bool a = mp_boundary_check(degree_stats(t), n).position == Position::interior;
            const bool b = interior_lp_check(lifted_statistic(t, C), C).interior;
            disagreements += a != b;
        }
        CHECK(disagreements == 0);
    }
}

TEST_CASE("facial sets") {
    const auto C = cayley_design(4, true);
    SUBCASE("split facet example") {
        const auto f = facial_set_of_table(fixtures::boundary4().lifted(), C);
        CHECK(f.is_proper);
        CHECK(f.co_facial_labels(C) == std::vector<std::string>{"(1,2)", "(4,3)"});
        CHECK(cells_from_certificate(f.certificate, C) == f.cells);
    }
    SUBCASE("interior example") {
        const auto f = facial_set_of_table(fixtures::interior4().lifted(), C);
        CHECK_FALSE(f.is_proper);
        CHECK(f.cells.size() == 12);
    }
    SUBCASE("isolated node") {
        auto t = EdgeCountTable::zeros(4, 3);
        t.set_count(0, 2, 1);
        t.set_count(0, 3, 2);
        t.set_count(2, 3, 1);
        const auto f = facial_set_of_table(t.lifted(), C);
        CHECK(f.co_facial_labels(C) == std::vector<std::string>{"(1,2)", "(2,3)", "(2,4)"});
    }
    SUBCASE("without a hint the LPs find the same split") {
        const auto x = fixtures::boundary4().lifted();
        const auto t = C.entries.apply(x);
        const std::vector<Rational> q(t.begin(), t.end());
        const auto f = facial_set(q, C);
        CHECK(f.cells == facial_set_of_table(x, C).cells);
        CHECK(f.certified);
    }
    SUBCASE("certificate maximality") {
        for (unsigned bits = 0; bits < 64; ++bits) {
            const auto f = facial_set_of_table(fixtures::graph_from_bits(4, bits).lifted(), C);
            CHECK(cells_from_certificate(f.certificate, C) == f.cells);
            // a certificate is strictly negative off the face, so no off cell can be added back
            for (int j : f.co_facial) {
                Rational v = 0;
                for (int r = 0; r < C.rows(); ++r) v += f.certificate[static_cast<std::size_t>(r)] * C.entries(r, j);
                CHECK(v < 0);
            }
        }
    }
}

TEST_CASE("split certificates") {
    SUBCASE("four nodes") {
        const auto s = split_certificate(fixtures::split4());
        REQUIRE(s.certificate);
        CHECK(s.certificate->S == std::vector<int>{2, 3});
        CHECK(s.certificate->T == std::vector<int>{0, 1});
        CHECK(s.isolated.empty());
        CHECK(s.dominating.empty());
    }
    SUBCASE("five nodes") {
        const auto s = split_certificate(fixtures::split5());
        REQUIRE(s.certificate);
        CHECK(s.certificate->S == std::vector<int>{1, 2, 3});
        CHECK(s.certificate->T == std::vector<int>{0, 4});
    }
    SUBCASE("six nodes") {
        const auto s = split_certificate(fixtures::split6());
        REQUIRE(s.certificate);
        CHECK(s.certificate->S == std::vector<int>{0, 1, 5});
        CHECK(s.certificate->T == std::vector<int>{2, 3, 4});
    }
    SUBCASE("every certificate sits on g = 0") {
        for (unsigned bits = 0; bits < 1024; ++bits) {
            const auto t = fixtures::graph_from_bits(5, bits);
            const auto d = degree_stats(t).d_tilde;
            for (const auto& c : split_certificate(t).all) CHECK(g_value(c.S, c.T, d, 5) == 0);
        }
    }
    SUBCASE("path graph against the exhaustive check") {
        auto t = EdgeCountTable::zeros(5, 1);
        for (int i = 0; i + 1 < 5; ++i) t.set_count(i, i + 1, 1);
        const auto s = split_certificate(t);
        const auto v = mp_boundary_check(degree_stats(t), 5);
        CHECK_FALSE(s.certificate);
        CHECK(v.position == Position::interior);
        const auto C = cayley_design(5, true);
        CHECK(interior_lp_check(lifted_statistic(t, C), C).interior);
    }
    SUBCASE("multigraphs are rejected") {
        CHECK_THROWS_AS(split_certificate(fixtures::boundary4()), ParameterError);
    }
}

TEST_CASE("double description") {
    SUBCASE("reduced Cayley cones") {
        CHECK(enumerate_facets(cayley_design(4, true).entries).facets.size() == 28);
        CHECK(enumerate_facets(cayley_design(5, true).entries).facets.size() == 70);
    }
    SUBCASE("Poisson cones") {
        for (int n = 3; n <= 6; ++n)
            CHECK(enumerate_facets(poisson_design(n).entries).facets.size() == static_cast<std::size_t>(3 * n));
        for (int n = 4; n <= 7; ++n)
            CHECK(enumerate_facets(undirected_poisson_design(n).entries).facets.size() == static_cast<std::size_t>(2 * n));
    }
    SUBCASE("facets are supporting") {
        const auto cone = enumerate_facets(cayley_design(4, true).entries);
        for (const auto& f : cone.facets) {
            for (const auto& g : cone.generators) {
                std::int64_t s = 0;
                for (std::size_t k = 0; k < g.size(); ++k) s += f.normal[k] * g[k];
                CHECK(s >= 0);
            }
            const auto on = cone.generators_on(f);
            std::vector<std::vector<std::int64_t>> sub;
            for (int k : on) sub.push_back(cone.generators[static_cast<std::size_t>(k)]);
            IntMatrix m(static_cast<int>(sub.size()), static_cast<int>(sub.front().size()));
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c) m(r, c) = sub[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            CHECK(exact_rank(m) == cone.dim - 1);
        }
    }
    SUBCASE("sampling facets") {
        const auto cone = enumerate_facets(cayley_design(4, true).entries);
        const auto kinds = classify_sampling_facets(cone, sampling_blocks(6, 2));
        CHECK(std::count_if(kinds.begin(), kinds.end(), [](int k) { return k >= 0; }) == 6);
    }
    SUBCASE("polytope of three-node degree sequences") {
        std::vector<std::vector<std::int64_t>> pts;
        for (unsigned bits = 0; bits < 8; ++bits) {
            const auto d = degree_stats(fixtures::graph_from_bits(3, bits)).d;
            pts.emplace_back(d.begin(), d.end());
        }
        const auto p = enumerate_polytope_facets(pts);
        CHECK(p.dim == 3);
        CHECK(p.facets.size() == 6);
        // each is one of the |S u T| = 3 split inequalities
        const auto family = degree_polytope_inequalities(3);
        for (const auto& f : p.facets) {
            bool found = false;
            for (const auto& ineq : family) {
                const auto a = ineq.coefficients(3);
                const std::vector<std::int64_t> a64(a.begin(), a.end());
                const std::int64_t offset = static_cast<std::int64_t>(ineq.S.size()) * (2 - static_cast<std::int64_t>(ineq.T.size()));
                if (a64 == f.normal && offset == f.offset) found = true;
            }
            CHECK(found);
        }
    }
    SUBCASE("size limit") {
        CHECK_THROWS_AS(enumerate_facets(cayley_design(9, true).entries), SizeError);
    }
}

TEST_CASE("Minkowski vertices") {
    SUBCASE("P2 is a segment") {
        const auto p = enumerate_vertices_minkowski(beta_design(2), {{0}});
        CHECK(p.generators.size() == 1);
        const auto q = enumerate_vertices_minkowski(cayley_design(2, false), sampling_blocks(1, 2));
        CHECK(q.generators.size() == 2);
        CHECK(q.dim == 1);
    }
    SUBCASE("degree polytopes") {
        // P_n as the image of the lifted cube under the B1 rows
        for (auto [n, expect] : {std::pair{3, 8}, std::pair{4, 46}}) {
            const auto full = cayley_design(n, true);
            const int pairs = pair_count(n);
            std::vector<int> keep;
            for (int r = pairs; r < full.rows(); ++r) keep.push_back(r);
            DesignMatrix b{full.entries.rows_subset(keep), {}, full.col_labels};
            const auto p = enumerate_vertices_minkowski(b, sampling_blocks(pairs, 2));
            CHECK(p.generators.size() == static_cast<std::size_t>(expect));
            CHECK(p.dim == n);
        }
    }
    SUBCASE("p1 on three nodes") {
        for (auto v : {P1Variant::zero, P1Variant::constant, P1Variant::edge}) {
            const auto C = p1_design(3, v);
            CHECK(enumerate_vertices_minkowski(C, sampling_blocks(3, 4)).generators.size() == 62);
        }
    }
    SUBCASE("candidate cap") {
        CHECK_THROWS_AS(enumerate_vertices_minkowski(cayley_design(7, true), sampling_blocks(21, 2)), SizeError);
    }
}

TEST_SUITE_END();
