#include "degseq/errors.hpp"
#include "degseq/io.hpp"
#include "degseq/tables.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

using namespace degseq;

TEST_SUITE_BEGIN("model-data");

TEST_CASE("pair indexing is lexicographic") {
    const int n = 5;
    int expect = 0;
    for (auto [i, j] : pair_list(n)) {
        CHECK(pair_index(i, j, n) == expect);
        CHECK(pair_index(j, i, n) == expect);
        CHECK(lifted_index(i, j, n) == 2 * expect);
        CHECK(lifted_index(j, i, n) == 2 * expect + 1);
        ++expect;
    }
    CHECK(expect == pair_count(n));
}

TEST_CASE("parse the four-node example with three trials") {
    std::istringstream in(fixtures::boundary4_csv);
    const auto t = parse_edge_table(in, Format::csv_matrix, 3);
    CHECK(t.n() == 4);
    CHECK(t.count(0, 1) == 0);
    CHECK(t.count(2, 3) == 3);
    CHECK(t.count(3, 2) == 0);
    CHECK(t.trials(1, 3) == 3);
}

TEST_CASE("empty graph parses to zeros") {
    std::istringstream in("x,0,0\n0,x,0\n0,0,x\n");
    const auto t = parse_edge_table(in, Format::csv_matrix, 1);
    for (int v : t.counts_by_pair()) CHECK(v == 0);
}

TEST_CASE("inconsistent lower triangle is rejected") {
    std::istringstream in("x,1,0\n3,x,0\n3,3,x\n");
    CHECK_THROWS_AS(parse_edge_table(in, Format::csv_matrix, 3), ConsistencyError);
}

TEST_CASE("counts above the trial count are rejected") {
    std::istringstream in("x,4\n,x\n");
    CHECK_THROWS_AS(parse_edge_table(in, Format::csv_matrix, 3), ConsistencyError);
}

TEST_CASE("malformed input") {
    std::istringstream ragged("x,1\n0\n");
    CHECK_THROWS_AS(parse_edge_table(ragged, Format::csv_matrix, 1), ParseError);
    std::istringstream word("x,a\n,x\n");
    CHECK_THROWS_AS(parse_edge_table(word, Format::csv_matrix, 1), ParseError);
    std::istringstream bad_json("{\"n\": 3, \"counts\": {\"1,4\": 1}}");
    CHECK_THROWS_AS(parse_edge_table(bad_json, Format::json), ParseError);
    std::istringstream not_json("{n: 3");
    CHECK_THROWS_AS(parse_edge_table(not_json, Format::json), ParseError);
}

TEST_CASE("JSON with per-pair trials") {
    std::istringstream in(R"({"n": 3, "trials": {"1,2": 3, "1,3": 2, "2,3": 5}, "counts": {"1,2": 2, "3,1": 2, "2,3": 0}})");
    const auto t = parse_edge_table(in, Format::json);
    CHECK(t.trials(0, 1) == 3);
    CHECK(t.count(0, 1) == 2);
    CHECK(t.count(0, 2) == 0);
    CHECK(t.trials(1, 2) == 5);
}

TEST_CASE("CSV round trip") {
    const auto t = generate_graph(BetaParams({0.3, -0.2, 0.1, 0.5, -1.0}), 4, 7);
    std::istringstream in(to_csv(t));
    CHECK(parse_edge_table(in, Format::csv_matrix, 4) == t);
}

TEST_CASE("degree statistics") {
    SUBCASE("four-node example") {
        const auto s = degree_stats(fixtures::boundary4());
        const std::vector<Rational> expect{1, 1, 2, 2};
        CHECK(s.d_tilde == expect);
        // independent: sum x_ij/N over the pairs touching each node
        const auto t = fixtures::boundary4();
        for (int i = 0; i < 4; ++i) {
            Rational sum = 0;
            for (int j = 0; j < 4; ++j)
                if (j != i) sum += Rational(t.count(std::min(i, j), std::max(i, j)), 3);
            CHECK(sum == s.d_tilde[i]);
        }
    }
    SUBCASE("complete graph") {
        auto t = EdgeCountTable::zeros(4, 1);
        for (auto [i, j] : pair_list(4)) t.set_count(i, j, 1);
        const auto s = degree_stats(t);
        for (int i = 0; i < 4; ++i) {
            CHECK(s.d[i] == 3);
            CHECK(s.d_tilde[i] == 3);
        }
    }
    SUBCASE("handshake identity on the interior example") {
        const auto s = degree_stats(fixtures::interior4());
        Rational total = 0;
        for (const auto& q : s.d_tilde) total += q;
        CHECK(total == Rational(2 * (2 + 1 + 2 + 0 + 1 + 3), 3));
        CHECK(total == 6);
    }
}

TEST_CASE("generation") {
    SUBCASE("zero parameters give probability one half") {
        const BetaParams b(std::vector<double>(6, 0.0));
        for (auto [i, j] : pair_list(6)) CHECK(edge_probability(b, i, j) == 0.5);
    }
    SUBCASE("saturation") {
        const BetaParams b({10, 10, 10, 10});
        for (auto [i, j] : pair_list(4)) CHECK(edge_probability(b, i, j) > 0.999);
        const auto t = generate_graph(b, 1, 3);
        for (int v : t.counts_by_pair()) CHECK(v == 1);
    }
    SUBCASE("link value at the interior example's estimate") {
        const BetaParams b({-0.237, -1.002, -0.237, 1.205});
        CHECK(edge_probability(b, 0, 1) == doctest::Approx(0.225).epsilon(1e-3));
    }
    SUBCASE("reproducible under a seed") {
        const BetaParams b({0.5, -0.5, 1.0, 0.0, -1.5, 0.25});
        const auto a1 = generate_graph(b, 5, 99);
        const auto a2 = generate_graph(b, 5, 99);
        CHECK(a1 == a2);
        CHECK_FALSE(a1 == generate_graph(b, 5, 100));
    }
    SUBCASE("non-finite parameters are rejected") {
        CHECK_THROWS_AS(BetaParams({0.0, std::nan("")}), ParameterError);
    }
}

TEST_CASE("invariants over random tables") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 7);
        std::vector<double> beta(static_cast<std::size_t>(n));
        for (auto& v : beta) v = std::uniform_real_distribution<>(-2, 2)(rng);
        std::vector<int> trials(static_cast<std::size_t>(pair_count(n)));
        for (auto& v : trials) v = 1 + static_cast<int>(rng() % 6);
        const auto t = generate_graph(BetaParams(beta), trials, rng());
        const auto s = degree_stats(t);

        std::int64_t sum_d = 0, sum_x = 0;
        for (auto v : s.d) sum_d += v;
        for (int v : t.counts_by_pair()) sum_x += v;
        CHECK(sum_d == 2 * sum_x);
        for (const auto& q : s.d_tilde) {
            CHECK(q >= 0);
            CHECK(q <= n - 1);
        }

        std::vector<int> sigma(static_cast<std::size_t>(n));
        std::iota(sigma.begin(), sigma.end(), 0);
        std::shuffle(sigma.begin(), sigma.end(), rng);
        const auto s2 = degree_stats(t.relabeled(sigma));
        for (int i = 0; i < n; ++i) {
            CHECK(s2.d[sigma[i]] == s.d[i]);
            CHECK(s2.d_tilde[sigma[i]] == s.d_tilde[i]);
        }
    }
}

TEST_SUITE_END();
