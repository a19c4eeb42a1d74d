#include "degseq/tables.hpp"

#include "degseq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace degseq {

namespace {

void check_node(int i, int n) {
    if (i < 0 || i >= n) throw std::out_of_range("node index " + std::to_string(i) + " out of range");
}

}  // namespace

int pair_index(int i, int j, int n) {
    if (i > j) std::swap(i, j);
    check_node(i, n);
    check_node(j, n);
    if (i == j) throw std::invalid_argument("pair_index: diagonal pair");
    // rows 0..i-1 contribute (n-1) + (n-2) + ... + (n-i) pairs
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

std::vector<std::pair<int, int>> pair_list(int n) {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(pair_count(n)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
    return out;
}

int lifted_index(int i, int j, int n) { return 2 * pair_index(i, j, n) + (i > j ? 1 : 0); }

std::vector<std::pair<int, int>> lifted_list(int n) {
    std::vector<std::pair<int, int>> out;
    for (auto [i, j] : pair_list(n)) {
        out.emplace_back(i, j);
        out.emplace_back(j, i);
    }
    return out;
}

// ---------------------------------------------------------------- EdgeCountTable

EdgeCountTable::EdgeCountTable(int n, std::vector<int> trials, std::vector<int> counts)
    : n_(n), trials_(std::move(trials)), counts_(std::move(counts)) {
    if (n < 2) throw std::invalid_argument("EdgeCountTable: need at least 2 nodes");
    const auto m = static_cast<std::size_t>(pair_count(n));
    if (trials_.size() != m || counts_.size() != m)
        throw std::invalid_argument("EdgeCountTable: expected " + std::to_string(m) + " pairs");
    for (std::size_t p = 0; p < m; ++p) {
        if (trials_[p] < 1) throw ConsistencyError("trial counts must be positive");
        if (counts_[p] < 0 || counts_[p] > trials_[p])
            throw ConsistencyError("count " + std::to_string(counts_[p]) + " outside [0, " +
                                   std::to_string(trials_[p]) + "]");
    }
}

EdgeCountTable EdgeCountTable::zeros(int n, int trials) {
    const auto m = static_cast<std::size_t>(pair_count(n));
    return EdgeCountTable(n, std::vector<int>(m, trials), std::vector<int>(m, 0));
}

int EdgeCountTable::trials(int i, int j) const { return trials_[pair_index(i, j, n_)]; }

int EdgeCountTable::count(int i, int j) const {
    const int p = pair_index(i, j, n_);
    return i < j ? counts_[p] : trials_[p] - counts_[p];
}

void EdgeCountTable::set_count(int i, int j, int value) {
    const int p = pair_index(i, j, n_);
    const int x = i < j ? value : trials_[p] - value;
    if (x < 0 || x > trials_[p]) throw ConsistencyError("count outside [0, N]");
    counts_[p] = x;
}

bool EdgeCountTable::simple() const {
    return std::all_of(trials_.begin(), trials_.end(), [](int v) { return v == 1; });
}

std::vector<int> EdgeCountTable::lifted() const {
    std::vector<int> out;
    out.reserve(2 * counts_.size());
    for (std::size_t p = 0; p < counts_.size(); ++p) {
        out.push_back(counts_[p]);
        out.push_back(trials_[p] - counts_[p]);
    }
    return out;
}

EdgeCountTable EdgeCountTable::relabeled(std::span<const int> sigma) const {
    if (static_cast<int>(sigma.size()) != n_) throw std::invalid_argument("relabeled: bad permutation size");
    std::vector<bool> seen(static_cast<std::size_t>(n_), false);
    for (int v : sigma) {
        check_node(v, n_);
        if (seen[v]) throw std::invalid_argument("relabeled: not a permutation");
        seen[v] = true;
    }
    EdgeCountTable out = *this;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            // edge counts are attached to the unordered pair
            const int p = pair_index(sigma[i], sigma[j], n_);
            out.trials_[p] = trials(i, j);
            out.counts_[p] = count(i, j);
        }
    return out;
}

// ---------------------------------------------------------------- DirectedCountTable

DirectedCountTable::DirectedCountTable(int n, std::vector<int> counts_lifted)
    : n_(n), counts_(std::move(counts_lifted)) {
    if (n < 2) throw std::invalid_argument("DirectedCountTable: need at least 2 nodes");
    if (counts_.size() != static_cast<std::size_t>(n * (n - 1)))
        throw std::invalid_argument("DirectedCountTable: expected n(n-1) cells");
    for (int v : counts_)
        if (v < 0) throw ConsistencyError("directed counts must be nonnegative");
}

DirectedCountTable DirectedCountTable::zeros(int n) {
    return DirectedCountTable(n, std::vector<int>(static_cast<std::size_t>(n * (n - 1)), 0));
}

int DirectedCountTable::count(int i, int j) const { return counts_[lifted_index(i, j, n_)]; }

void DirectedCountTable::set_count(int i, int j, int value) {
    if (value < 0) throw ConsistencyError("directed counts must be nonnegative");
    counts_[lifted_index(i, j, n_)] = value;
}

// ---------------------------------------------------------------- DyadTable

DyadTable::DyadTable(int n, std::vector<std::uint8_t> states) : n_(n), states_(std::move(states)) {
    if (n < 2) throw std::invalid_argument("DyadTable: need at least 2 nodes");
    if (states_.size() != static_cast<std::size_t>(pair_count(n)))
        throw std::invalid_argument("DyadTable: expected one state per dyad");
    for (auto s : states_)
        if (s > 3) throw ConsistencyError("dyad state code must be 0..3");
}

DyadTable DyadTable::from_adjacency(int n, std::span<const int> adj) {
    if (adj.size() != static_cast<std::size_t>(n * n)) throw std::invalid_argument("adjacency must be n*n");
    std::vector<std::uint8_t> states;
    for (auto [i, j] : pair_list(n)) {
        const int a = adj[static_cast<std::size_t>(i * n + j)];
        const int b = adj[static_cast<std::size_t>(j * n + i)];
        if ((a != 0 && a != 1) || (b != 0 && b != 1)) throw ConsistencyError("adjacency entries must be 0/1");
        states.push_back(static_cast<std::uint8_t>(a + 2 * b));
    }
    return DyadTable(n, std::move(states));
}

int DyadTable::state(int i, int j) const { return states_[pair_index(i, j, n_)]; }

std::vector<int> DyadTable::indicator() const {
    std::vector<int> out(4 * states_.size(), 0);
    for (std::size_t p = 0; p < states_.size(); ++p) out[4 * p + states_[p]] = 1;
    return out;
}

// ---------------------------------------------------------------- RaschTable

RaschTable::RaschTable(int k, int l, std::vector<int> responses) : k_(k), l_(l), responses_(std::move(responses)) {
    if (k < 1 || l < 1) throw std::invalid_argument("RaschTable: empty shape");
    if (responses_.size() != static_cast<std::size_t>(k * l)) throw std::invalid_argument("RaschTable: expected k*l cells");
    for (int v : responses_)
        if (v != 0 && v != 1) throw ConsistencyError("Rasch responses must be 0/1");
}

// ---------------------------------------------------------------- statistics

std::vector<double> DegreeStats::d_tilde_real() const {
    std::vector<double> out;
    out.reserve(d_tilde.size());
    for (const auto& q : d_tilde) out.push_back(to_double(q));
    return out;
}

DegreeStats degree_stats(const EdgeCountTable& t) {
    const int n = t.n();
    DegreeStats s;
    s.d.assign(static_cast<std::size_t>(n), 0);
    s.d_tilde.assign(static_cast<std::size_t>(n), Rational(0));
    for (auto [i, j] : pair_list(n)) {
        const int x = t.count(i, j);
        const Rational q(x, t.trials(i, j));
        s.d[i] += x;
        s.d[j] += x;
        s.d_tilde[i] += q;
        s.d_tilde[j] += q;
    }
    return s;
}

BetaParams::BetaParams(std::vector<double> b) : beta(std::move(b)) {
    for (double v : beta)
        if (!std::isfinite(v)) throw ParameterError("beta entries must be finite");
}

double edge_probability(const BetaParams& params, int i, int j) {
    const double eta = params.beta[i] + params.beta[j];
    // numerically stable logistic
    return eta >= 0 ? 1.0 / (1.0 + std::exp(-eta)) : std::exp(eta) / (1.0 + std::exp(eta));
}

EdgeCountTable generate_graph(const BetaParams& params, std::span<const int> trials_by_pair,
                              std::uint64_t seed) {
    const int n = params.n();
    if (trials_by_pair.size() != static_cast<std::size_t>(pair_count(n)))
        throw std::invalid_argument("generate_graph: trials must have one entry per pair");
    std::mt19937_64 rng(seed);
    std::vector<int> counts;
    counts.reserve(trials_by_pair.size());
    int p = 0;
    for (auto [i, j] : pair_list(n)) {
        std::binomial_distribution<int> draw(trials_by_pair[p++], edge_probability(params, i, j));
        counts.push_back(draw(rng));
    }
    return EdgeCountTable(n, std::vector<int>(trials_by_pair.begin(), trials_by_pair.end()), std::move(counts));
}

EdgeCountTable generate_graph(const BetaParams& params, int trials, std::uint64_t seed) {
    std::vector<int> tr(static_cast<std::size_t>(pair_count(params.n())), trials);
    return generate_graph(params, tr, seed);
}

}  // namespace degseq
