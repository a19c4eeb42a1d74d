#include "degseq/zoo.hpp"

#include "degseq/errors.hpp"
#include "degseq/estimation.hpp"
#include "degseq/log.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

namespace degseq {

namespace {

std::vector<Rational> statistic(const DesignMatrix& C, std::span<const int> x) {
    const auto t = C.entries.apply(x);
    return {t.begin(), t.end()};
}

}  // namespace

// Rasch ----------------------------------------------------------------------

std::optional<HabermanSets> rasch_blocking_sets(const RaschTable& t) {
    const int k = t.subjects(), l = t.items();
    if (k > kRaschSearchCap || l > kRaschSearchCap)
        throw SizeError("blocking-set search is capped at " + std::to_string(kRaschSearchCap) + " subjects and items");

    // Bit i of `a` puts subject i in A (else B); bit j of `c` puts item j in C (else D).
    for (std::uint32_t a = 0; a < (1u << k); ++a) {
        for (std::uint32_t c = 0; c < (1u << l); ++c) {
            bool blocks = true, nonempty = false;
            for (int i = 0; i < k && blocks; ++i) {
                const bool in_a = (a >> i) & 1u;
                for (int j = 0; j < l; ++j) {
                    const bool in_c = (c >> j) & 1u;
                    if (in_a && in_c) {
                        nonempty = true;
                        if (t.at(i, j) != 0) { blocks = false; break; }
                    } else if (!in_a && !in_c) {
                        nonempty = true;
                        if (t.at(i, j) != 1) { blocks = false; break; }
                    }
                }
            }
            if (!blocks || !nonempty) continue;
            HabermanSets s;
            for (int i = 0; i < k; ++i) (((a >> i) & 1u) ? s.A : s.B).push_back(i);
            for (int j = 0; j < l; ++j) (((c >> j) & 1u) ? s.C : s.D).push_back(j);
            return s;
        }
    }
    return std::nullopt;
}

RaschVerdict rasch_existence(const RaschTable& t) {
    const int k = t.subjects(), l = t.items();
    if (k < 2 || l < 2) throw ParameterError("the Rasch check needs at least two subjects and two items");

    const auto C = rasch_design(k, l);
    std::vector<int> lifted;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < l; ++j) {
            lifted.push_back(t.at(i, j));
            lifted.push_back(1 - t.at(i, j));
        }

    RaschVerdict v;
    v.facial_set = facial_set_of_table(lifted, C);
    v.lp_exists = !v.facial_set.is_proper;
    v.exists = v.lp_exists;
    if (k <= kRaschSearchCap && l <= kRaschSearchCap) {
        v.blocking = rasch_blocking_sets(t);
        v.combinatorial_exists = !v.blocking.has_value();
        if (*v.combinatorial_exists != v.lp_exists)
            throw ConsistencyError("Rasch existence: combinatorial and LP verdicts disagree");
    }
    return v;
}

// Bradley-Terry ----------------------------------------------------------------

BtVerdict bt_existence(const DirectedCountTable& t) {
    const int n = t.n();
    if (n < 2) throw ParameterError("Bradley-Terry needs at least two objects");

    // reach[v][u]: u reachable from v along i -> j iff x_ij > 0
    std::vector<std::vector<char>> reach(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (int s = 0; s < n; ++s) {
        auto& seen = reach[static_cast<std::size_t>(s)];
        std::vector<int> stack{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int u = 0; u < n; ++u)
                if (u != v && !seen[static_cast<std::size_t>(u)] && t.count(v, u) > 0) {
                    seen[static_cast<std::size_t>(u)] = 1;
                    stack.push_back(u);
                }
        }
    }

    BtVerdict out;
    out.exists = std::all_of(reach[0].begin(), reach[0].end(), [](char c) { return c != 0; });
    for (int v = 0; v < n && out.exists; ++v)
        if (!reach[static_cast<std::size_t>(v)][0]) out.exists = false;
    if (out.exists) return out;

    for (int v = 0; v < n; ++v) {
        std::vector<int> comp;
        for (int u = 0; u < n; ++u)
            if (reach[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] && reach[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)])
                comp.push_back(u);
        bool source = true;
        for (int u : comp)
            for (int w = 0; w < n && source; ++w)
                if (std::find(comp.begin(), comp.end(), w) == comp.end() && t.count(w, u) > 0) source = false;
        if (source) {
            out.never_loses = std::move(comp);
            break;
        }
    }
    return out;
}

bool bt_lp_existence(const DirectedCountTable& t) {
    const int n = t.n();
    const auto full = bt_design(n);
    const int np = pair_count(n);

    std::vector<int> pairs;
    int p = 0;
    for (auto [i, j] : pair_list(n)) {
        if (t.count(i, j) + t.count(j, i) > 0) pairs.push_back(p);
        ++p;
    }
    DesignMatrix C{IntMatrix(static_cast<int>(pairs.size()) + n, 2 * static_cast<int>(pairs.size())), {}, {}};
    std::vector<int> x;
    for (int q = 0; q < static_cast<int>(pairs.size()); ++q) {
        const int src = pairs[static_cast<std::size_t>(q)];
        for (int side = 0; side < 2; ++side) {
            const int col = 2 * src + side;
            C.entries(q, 2 * q + side) = full.entries(src, col);
            for (int i = 0; i < n; ++i) C.entries(static_cast<int>(pairs.size()) + i, 2 * q + side) = full.entries(np + i, col);
            C.col_labels.push_back(full.col_labels[static_cast<std::size_t>(col)]);
            x.push_back(t.counts_lifted()[static_cast<std::size_t>(col)]);
        }
    }
    return interior_lp_check(statistic(C, x), C).interior;
}

std::int64_t bt_facet_count(int n) {
    if (n < 2 || n > 62) throw ParameterError("bt_facet_count needs 2 <= n <= 62");
    return (std::int64_t{1} << n) - 2;
}

// Poisson --------------------------------------------------------------------

std::vector<std::vector<int>> poisson_facial_catalog(int n, bool directed) {
    std::vector<std::vector<int>> out;
    if (directed) {
        if (n < 3) throw ParameterError("the directed Poisson catalog needs n >= 3");
        const auto cells = lifted_list(n);
        for (int side = 0; side < 2; ++side)
            for (int v = 0; v < n; ++v) {
                std::vector<int> s;
                for (int c = 0; c < static_cast<int>(cells.size()); ++c)
                    if ((side == 0 ? cells[static_cast<std::size_t>(c)].first : cells[static_cast<std::size_t>(c)].second) == v) s.push_back(c);
                out.push_back(std::move(s));
            }
        for (int k = 0; k < n; ++k) {
            std::vector<int> s;
            for (int c = 0; c < static_cast<int>(cells.size()); ++c)
                if (cells[static_cast<std::size_t>(c)].first != k && cells[static_cast<std::size_t>(c)].second != k) s.push_back(c);
            out.push_back(std::move(s));
        }
    } else {
        if (n < 3) throw ParameterError("the undirected Poisson catalog needs n >= 3");
        const auto pairs = pair_list(n);
        for (int avoid = 0; avoid < 2; ++avoid)
            for (int k = 0; k < n; ++k) {
                std::vector<int> s;
                for (int c = 0; c < static_cast<int>(pairs.size()); ++c) {
                    const bool touches = pairs[static_cast<std::size_t>(c)].first == k || pairs[static_cast<std::size_t>(c)].second == k;
                    if (touches != (avoid == 1)) s.push_back(c);
                }
                out.push_back(std::move(s));
            }
    }
    return out;
}

PoissonBound poisson_existence_bound(std::span<const double> means, int n) {
    const auto cells = lifted_list(n);
    if (means.size() != cells.size()) throw std::invalid_argument("poisson_existence_bound: expected n(n-1) means");
    std::vector<double> out_sum(static_cast<std::size_t>(n), 0.0), in_sum(static_cast<std::size_t>(n), 0.0);
    double total = 0, m_star = INFINITY;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (!(means[c] > 0)) throw ParameterError("Poisson means must be positive");
        out_sum[static_cast<std::size_t>(cells[c].first)] += means[c];
        in_sum[static_cast<std::size_t>(cells[c].second)] += means[c];
        total += means[c];
        m_star = std::min(m_star, means[c]);
    }
    double terms = 0;
    for (int v = 0; v < n; ++v) {
        terms += std::exp(-out_sum[static_cast<std::size_t>(v)]) + std::exp(-in_sum[static_cast<std::size_t>(v)]);
        // cells avoiding v: everything minus its row and column
        terms += std::exp(-(total - out_sum[static_cast<std::size_t>(v)] - in_sum[static_cast<std::size_t>(v)]));
    }
    PoissonBound b;
    b.three_term = std::min(1.0, terms);
    b.simplified = std::min(1.0, 3.0 * n * std::exp(-(n - 1) * m_star));
    b.simplified_valid = n >= 7;
    return b;
}

// p1 -------------------------------------------------------------------------

DyadProbabilities p1_dyad_probabilities(const P1Params& params, P1Variant variant) {
    const int n = static_cast<int>(params.alpha.size());
    if (static_cast<int>(params.beta.size()) != n) throw ParameterError("p1: alpha and beta must have the same length");
    if (variant == P1Variant::edge && static_cast<int>(params.rho_node.size()) != n)
        throw ParameterError("p1: the edge variant needs one reciprocity effect per node");
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(params.theta) || !finite(params.rho) || !std::all_of(params.alpha.begin(), params.alpha.end(), finite) ||
        !std::all_of(params.beta.begin(), params.beta.end(), finite) ||
        !std::all_of(params.rho_node.begin(), params.rho_node.end(), finite))
        throw ParameterError("p1: parameters must be finite");

    DyadProbabilities out;
    for (auto [i, j] : pair_list(n)) {
        const auto a = [&](int v) { return params.alpha[static_cast<std::size_t>(v)]; };
        const auto b = [&](int v) { return params.beta[static_cast<std::size_t>(v)]; };
        double rho = 0;
        if (variant == P1Variant::constant) rho = params.rho;
        if (variant == P1Variant::edge)
            rho = params.rho + params.rho_node[static_cast<std::size_t>(i)] + params.rho_node[static_cast<std::size_t>(j)];
        const std::array<double, 4> eta{0.0, a(i) + b(j) + params.theta, a(j) + b(i) + params.theta,
                                        a(i) + b(j) + a(j) + b(i) + 2 * params.theta + rho};
        const double top = *std::max_element(eta.begin(), eta.end());
        std::array<double, 4> p{};
        double z = 0;
        for (int s = 0; s < 4; ++s) z += p[static_cast<std::size_t>(s)] = std::exp(eta[static_cast<std::size_t>(s)] - top);
        for (auto& v : p) v /= z;
        out.push_back(p);
    }
    return out;
}

P1Verdict p1_existence(const DyadTable& t, P1Variant variant) {
    if (t.n() < 3) throw ParameterError("the p1 check needs n >= 3");
    const auto C = p1_design(t.n(), variant);
    const auto x = t.indicator();
    P1Verdict v;
    v.exists = interior_lp_check(statistic(C, x), C).interior;
    if (v.exists) {
        for (int j = 0; j < C.cols(); ++j) v.facial_set.cells.push_back(j);
        v.facial_set.certificate.assign(static_cast<std::size_t>(C.rows()), Rational(0));
    } else {
        v.facial_set = facial_set_of_table(x, C);
    }
    return v;
}

DyadProbabilities p1_fit(const DyadTable& t, P1Variant variant) {
    if (!p1_existence(t, variant).exists) throw NonexistentMLE("the p1 statistic lies on the boundary of its cone");
    const int np = pair_count(t.n());
    const auto C = p1_design(t.n(), variant);
    const auto fit = fit_product_multinomial(C.entries, sampling_blocks(np, 4), t.indicator());
    DyadProbabilities out(static_cast<std::size_t>(np));
    for (int p = 0; p < np; ++p)
        for (int s = 0; s < 4; ++s) out[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)] = fit.probabilities[static_cast<std::size_t>(4 * p + s)];
    return out;
}

DyadTable p1_network(int n, std::uint64_t code) {
    std::vector<std::uint8_t> states(static_cast<std::size_t>(pair_count(n)));
    for (auto& s : states) {
        s = static_cast<std::uint8_t>(code & 3u);
        code >>= 2;
    }
    return DyadTable(n, std::move(states));
}

P1Survey p1_survey(int n, P1Variant variant, int threads) {
    if (n < 3 || n > 5) throw SizeError("the exhaustive p1 survey supports 3 <= n <= 5");
    threads = std::max(1, threads);
    const auto C = p1_design(n, variant);
    const std::uint64_t total = std::uint64_t{1} << (2 * pair_count(n));

    std::map<std::vector<std::int64_t>, std::int64_t> multiplicity;
    for (std::uint64_t code = 0; code < total; ++code) ++multiplicity[C.entries.apply(p1_network(n, code).indicator())];

    std::vector<std::vector<std::int64_t>> keys;
    std::vector<std::int64_t> counts;
    for (auto& [k, c] : multiplicity) {
        keys.push_back(k);
        counts.push_back(c);
    }
    std::vector<char> interior(keys.size(), 0);
    auto work = [&](int id) {
        for (std::size_t s = static_cast<std::size_t>(id); s < keys.size(); s += static_cast<std::size_t>(threads))
            interior[s] = interior_lp_check(std::span<const std::int64_t>(keys[s]), C).interior;
    };
    std::vector<std::thread> pool;
    for (int id = 1; id < threads; ++id) pool.emplace_back(work, id);
    work(0);
    for (auto& th : pool) th.join();

    P1Survey out{n, variant, static_cast<std::int64_t>(total), static_cast<std::int64_t>(keys.size()), 0, 0};
    for (std::size_t s = 0; s < keys.size(); ++s)
        if (interior[s]) {
            ++out.existing_statistics;
            out.existing_networks += counts[s];
        }
    log_info("p1 survey n=" + std::to_string(n) + " " + to_string(variant) + ": " + std::to_string(out.existing_networks) +
             " of " + std::to_string(out.networks) + " networks");
    return out;
}

}  // namespace degseq
