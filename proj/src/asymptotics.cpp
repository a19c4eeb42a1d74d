#include "degseq/asymptotics.hpp"

#include "degseq/design.hpp"
#include "degseq/errors.hpp"
#include "degseq/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace degseq {

std::vector<double> expected_degrees(const BetaParams& params) {
    std::vector<int> ones(static_cast<std::size_t>(pair_count(params.n())), 1);
    return expected_degrees(params, ones);
}

std::vector<double> expected_degrees(const BetaParams& params, std::span<const int> trials_by_pair) {
    const int n = params.n();
    if (trials_by_pair.size() != static_cast<std::size_t>(pair_count(n)))
        throw std::invalid_argument("expected_degrees: trials must have one entry per pair");
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    int p = 0;
    for (auto [i, j] : pair_list(n)) {
        const double m = trials_by_pair[static_cast<std::size_t>(p++)] * edge_probability(params, i, j);
        d[static_cast<std::size_t>(i)] += m;
        d[static_cast<std::size_t>(j)] += m;
    }
    return d;
}

double existence_floor(int n, double c) { return 1.0 - 2.0 / std::pow(n, 2 * c - 1); }

double large_sides_floor(int n, int N, double c) {
    return N == 1 ? existence_floor(n, c) : 1.0 - 2.0 / std::pow(n, 2 * c - 2);
}

namespace {

struct PairScan {
    double margin = std::numeric_limits<double>::infinity();
    std::vector<int> S, T;
    std::int64_t checked = 0;
};

bool keep_pair(std::size_t s, std::size_t t, int n, double min_side) {
    return admissible_split_size(static_cast<int>(s + t), n) && static_cast<double>(std::min(s, t)) > min_side;
}

void consider(PairScan& scan, const std::vector<int>& S, const std::vector<int>& T, std::span<const double> d, int n,
              double radius, double C) {
    ++scan.checked;
    const double m = g_value(S, T, d, n) - static_cast<double>(S.size() + T.size()) * radius - C;
    if (m < scan.margin) {
        scan.margin = m;
        scan.S = S;
        scan.T = T;
    }
}

PairScan scan_exhaustive(std::span<const double> d, int n, double radius, double C, double min_side) {
    PairScan scan;
    std::vector<int> label(static_cast<std::size_t>(n), 0), S, T;
    while (true) {
        S.clear();
        T.clear();
        for (int i = 0; i < n; ++i) {
            if (label[static_cast<std::size_t>(i)] == 1) S.push_back(i);
            else if (label[static_cast<std::size_t>(i)] == 2) T.push_back(i);
        }
        if (!S.empty() && !T.empty() && keep_pair(S.size(), T.size(), n, min_side)) consider(scan, S, T, d, n, radius, C);
        int k = 0;
        while (k < n && label[static_cast<std::size_t>(k)] == 2) label[static_cast<std::size_t>(k++)] = 0;
        if (k == n) break;
        ++label[static_cast<std::size_t>(k)];
    }
    return scan;
}

// For fixed sizes the margin depends on (S,T) only through -sum_S d + sum_T d, which is smallest
// with S on the largest degrees and T on the smallest. One candidate per size pair is enough.
PairScan scan_by_size(std::span<const double> d, int n, double radius, double C, double min_side) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return d[static_cast<std::size_t>(a)] > d[static_cast<std::size_t>(b)]; });
    PairScan scan;
    for (int s = 1; s < n; ++s)
        for (int t = 1; s + t <= n; ++t) {
            if (!keep_pair(static_cast<std::size_t>(s), static_cast<std::size_t>(t), n, min_side)) continue;
            std::vector<int> S(order.begin(), order.begin() + s), T(order.end() - t, order.end());
            std::sort(S.begin(), S.end());
            std::sort(T.begin(), T.end());
            consider(scan, S, T, d, n, radius, C);
        }
    return scan;
}

}  // namespace

AsymptoticReport check_sufficient_conditions(std::span<const double> d_bar, int N, double c, double C,
                                             BoundVariant variant) {
    const int n = static_cast<int>(d_bar.size());
    if (n < 2) throw ParameterError("check_sufficient_conditions: need at least two nodes");
    if (N < 1) throw ParameterError("check_sufficient_conditions: N must be positive");
    const bool large_sides = variant == BoundVariant::large_sides;
    const double c_min = large_sides && N > 1 ? 1.0 : 0.5;
    if (!(c > c_min)) throw ParameterError("check_sufficient_conditions: c must exceed " + std::to_string(c_min));

    AsymptoticReport r;
    r.n = n;
    r.N = N;
    r.c = c;
    r.C = C;
    r.variant = variant;
    r.radius = std::sqrt(c * n * std::log(static_cast<double>(n)) / (large_sides ? 1 : N));
    const double c_hi = (n - 1) / 2.0 - r.radius;
    if (!(C > 0 && C < c_hi))
        throw ParameterError("check_sufficient_conditions: C must lie in (0, " + std::to_string(c_hi) + ")");

    double slack = std::numeric_limits<double>::infinity();
    for (double v : d_bar) slack = std::min({slack, v, n - 1 - v});
    r.margin_i = slack - (2 * r.radius + C);
    r.condition_i = r.margin_i >= 0;

    const double min_side = large_sides ? std::sqrt(c * n * std::log(static_cast<double>(n))) + C : 0.0;
    const auto scan = n <= kExhaustiveCap ? scan_exhaustive(d_bar, n, r.radius, C, min_side)
                                          : scan_by_size(d_bar, n, r.radius, C, min_side);
    r.checked_pairs = scan.checked;
    r.worst_S = scan.S;
    r.worst_T = scan.T;
    // an empty family makes (ii) vacuous
    r.margin_ii = scan.checked ? scan.margin : 0.0;
    r.condition_ii = scan.checked == 0 || scan.margin > 0;

    r.gate = n >= std::max(4.0, 2 * r.radius + 1) && (!large_sides || n >= N);
    r.bound = large_sides ? large_sides_floor(n, N, c) : existence_floor(n, c);
    return r;
}

double cds_lhs(std::span<const int> S, std::span<const double> d) {
    const double s = static_cast<double>(S.size());
    std::vector<bool> in(d.size(), false);
    for (int i : S) in[static_cast<std::size_t>(i)] = true;
    double v = s * (s - 1);
    for (std::size_t i = 0; i < d.size(); ++i) v += in[i] ? -d[i] : std::min(d[i], s);
    return v;
}

CdsReport check_cds_condition(std::span<const double> d, double c1, double c2, double c3) {
    const int n = static_cast<int>(d.size());
    if (n > kExhaustiveCap) throw SizeError("check_cds_condition: exhaustive over subsets, capped at n = 12");
    for (double k : {c1, c2, c3})
        if (!(k > 0 && k < 1)) throw ParameterError("check_cds_condition: constants must lie in (0, 1)");

    CdsReport r;
    r.degree_bounds = std::all_of(d.begin(), d.end(), [&](double v) { return c1 * (n - 1) < v && v < c2 * (n - 1); });
    r.worst_margin = std::numeric_limits<double>::infinity();
    const double threshold = c1 * c1 * n * n;
    std::vector<int> S;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (std::popcount(mask) <= threshold) continue;
        S.clear();
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1u) S.push_back(i);
        ++r.checked_sets;
        const double m = cds_lhs(S, d) - c3 * n * n;
        if (m < r.worst_margin) {
            r.worst_margin = m;
            r.worst_S = S;
        }
    }
    if (r.checked_sets == 0) r.worst_margin = 0;
    r.set_condition = r.checked_sets == 0 || r.worst_margin > 0;
    return r;
}

bool mle_exists(const EdgeCountTable& t) {
    const int n = t.n();
    bool constant = true;
    for (auto [i, j] : pair_list(n)) constant = constant && t.trials(i, j) == t.trials(0, 1);
    if (constant && n <= kExhaustiveCap) return mp_interior(degree_stats(t).d_tilde, n);
    const auto C = cayley_design(n, true);
    return interior_lp_check(C.entries.apply(t.lifted()), C).interior;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

MonteCarloReport mc_existence_probability(const BetaParams& params, int N, int replicates, std::uint64_t seed,
                                          std::optional<double> c, unsigned threads) {
    if (replicates < 1) throw ParameterError("mc_existence_probability: need at least one replicate");
    const int n = params.n();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(replicates));

    std::vector<char> verdict(static_cast<std::size_t>(replicates), 0);
    auto work = [&](unsigned w) {
        for (int rep = static_cast<int>(w); rep < replicates; rep += static_cast<int>(threads)) {
            const auto t = generate_graph(params, N, splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(rep))));
            verdict[static_cast<std::size_t>(rep)] = mle_exists(t);
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    }

    MonteCarloReport r;
    r.n = n;
    r.N = N;
    r.replicates = replicates;
    r.verdicts.assign(verdict.begin(), verdict.end());
    r.exist_count = static_cast<int>(std::count(verdict.begin(), verdict.end(), 1));
    r.empirical_exist_rate = static_cast<double>(r.exist_count) / replicates;
    r.nonexistence_rate = 1.0 - r.empirical_exist_rate;
    r.std_error = std::sqrt(r.empirical_exist_rate * r.nonexistence_rate / replicates);
    if (c) {
        r.existence_floor = existence_floor(n, *c);
        r.large_sides_floor = large_sides_floor(n, N, *c);
    }
    return r;
}

}  // namespace degseq
