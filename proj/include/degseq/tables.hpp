#pragma once

#include "degseq/rational.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace degseq {

// Node labels are 0-based internally; all I/O is 1-based.
//
// Unordered pairs i<j are indexed lexicographically: (0,1),(0,2),...,(n-2,n-1).
// Ordered ("lifted") pairs use the grouped order (0,1),(1,0),(0,2),(2,0),...,
// so the two orientations of pair p sit at 2p and 2p+1.

inline int pair_count(int n) { return n * (n - 1) / 2; }
int pair_index(int i, int j, int n);
std::vector<std::pair<int, int>> pair_list(int n);

int lifted_index(int i, int j, int n);
std::vector<std::pair<int, int>> lifted_list(int n);

/// Binomial edge counts on unordered pairs: x_ij successes out of N_ij trials.
/// The lower triangle x_ji = N_ij - x_ij is derived, never stored.
class EdgeCountTable {
public:
    EdgeCountTable(int n, std::vector<int> trials, std::vector<int> counts);
    static EdgeCountTable zeros(int n, int trials);

    int n() const { return n_; }
    int trials(int i, int j) const;
    /// x_ij for any i != j; for i > j this is N_ij - x_ji.
    int count(int i, int j) const;
    void set_count(int i, int j, int value);

    std::span<const int> trials_by_pair() const { return trials_; }
    std::span<const int> counts_by_pair() const { return counts_; }
    bool simple() const;

    /// Lifted table x' in grouped ordered-pair order.
    std::vector<int> lifted() const;
    /// Node i of this table becomes node sigma[i] of the result.
    EdgeCountTable relabeled(std::span<const int> sigma) const;

    friend bool operator==(const EdgeCountTable&, const EdgeCountTable&) = default;

private:
    int n_;
    std::vector<int> trials_;
    std::vector<int> counts_;
};

/// Nonnegative counts on ordered pairs (Poisson, Bradley-Terry).
class DirectedCountTable {
public:
    DirectedCountTable(int n, std::vector<int> counts_lifted);
    static DirectedCountTable zeros(int n);

    int n() const { return n_; }
    int count(int i, int j) const;
    void set_count(int i, int j, int value);
    std::span<const int> counts_lifted() const { return counts_; }

    friend bool operator==(const DirectedCountTable&, const DirectedCountTable&) = default;

private:
    int n_;
    std::vector<int> counts_;
};

/// Dyad states for p1 models, one per unordered pair.
/// State codes: 0 = (0,0), 1 = (1,0) i->j, 2 = (0,1) j->i, 3 = (1,1).
class DyadTable {
public:
    DyadTable(int n, std::vector<std::uint8_t> states);
    static DyadTable from_adjacency(int n, std::span<const int> adjacency_row_major);

    int n() const { return n_; }
    int state(int i, int j) const;  // i < j
    std::span<const std::uint8_t> states() const { return states_; }
    /// One-hot vector of length 4*C(n,2), dyad-major.
    std::vector<int> indicator() const;

private:
    int n_;
    std::vector<std::uint8_t> states_;
};

/// Binary subject-by-item responses, row-major k x l.
class RaschTable {
public:
    RaschTable(int k, int l, std::vector<int> responses);

    int subjects() const { return k_; }
    int items() const { return l_; }
    int at(int subject, int item) const { return responses_[static_cast<std::size_t>(subject * l_ + item)]; }
    std::span<const int> responses() const { return responses_; }

private:
    int k_;
    int l_;
    std::vector<int> responses_;
};

struct DegreeStats {
    std::vector<std::int64_t> d;
    std::vector<Rational> d_tilde;

    std::vector<double> d_tilde_real() const;
};

DegreeStats degree_stats(const EdgeCountTable& t);

struct BetaParams {
    std::vector<double> beta;

    explicit BetaParams(std::vector<double> b);
    int n() const { return static_cast<int>(beta.size()); }
};

/// Logistic link of the beta model for pair i<j.
double edge_probability(const BetaParams& params, int i, int j);

/// Independent Binomial(N_ij, p_ij) draws; trials_by_pair follows pair_index order.
EdgeCountTable generate_graph(const BetaParams& params, std::span<const int> trials_by_pair,
                              std::uint64_t seed);
EdgeCountTable generate_graph(const BetaParams& params, int trials, std::uint64_t seed);

}  // namespace degseq
