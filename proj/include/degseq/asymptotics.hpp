#pragma once

#include "degseq/tables.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace degseq {

/// d_bar = A p(beta): expected degree per node for one trial per pair.
std::vector<double> expected_degrees(const BetaParams& params);
/// Same with Binomial(N_ij, p_ij) counts; trials_by_pair follows pair_index order.
std::vector<double> expected_degrees(const BetaParams& params, std::span<const int> trials_by_pair);

enum class BoundVariant { full_family, large_sides };

struct AsymptoticReport {
    int n = 0;
    int N = 1;
    double c = 0;
    double C = 0;
    BoundVariant variant = BoundVariant::full_family;
    double radius = 0;  // sqrt(c n log n / N)

    bool condition_i = false;
    double margin_i = 0;  // min_i min(d_i, n-1-d_i) - (2 radius + C)

    bool condition_ii = false;
    double margin_ii = 0;  // min over checked (S,T) of g - |S u T| radius - C
    std::vector<int> worst_S;
    std::vector<int> worst_T;
    std::int64_t checked_pairs = 0;

    bool gate = false;  // n >= max(4, 2 radius + 1)
    double bound = 0;   // probability floor for existence

    bool holds() const { return condition_i && condition_ii && gate; }
};

/// Sufficient conditions for existence with high probability. The large_sides variant keeps only
/// pairs with min(|S|,|T|) > sqrt(c n log n) + C. Throws ParameterError for c or C out of range.
AsymptoticReport check_sufficient_conditions(std::span<const double> d_bar, int N, double c, double C,
                                             BoundVariant variant = BoundVariant::full_family);

/// Closed-form existence floors.
double existence_floor(int n, double c);
double large_sides_floor(int n, int N, double c);

struct CdsReport {
    bool degree_bounds = false;  // c1 (n-1) < d_i < c2 (n-1) for all i
    bool set_condition = false;  // the sum condition over every large enough S
    double worst_margin = 0;
    std::vector<int> worst_S;
    std::int64_t checked_sets = 0;

    bool holds() const { return degree_bounds && set_condition; }
};

/// |S|(|S|-1) - sum_S d_i + sum_{i not in S} min(d_i, |S|).
double cds_lhs(std::span<const int> S, std::span<const double> d);

/// Exhaustive over subsets with |S| > c1^2 n^2; throws SizeError for n > 12.
CdsReport check_cds_condition(std::span<const double> d, double c1, double c2, double c3);

struct MonteCarloReport {
    int n = 0;
    int N = 1;
    int replicates = 0;
    int exist_count = 0;
    double empirical_exist_rate = 0;
    double nonexistence_rate = 0;
    double std_error = 0;  // binomial standard error of the rate
    std::optional<double> existence_floor;
    std::optional<double> large_sides_floor;
    std::vector<bool> verdicts;  // per replicate, in replicate order
};

/// Samples graphs and decides existence of the MLE for each. Replicate r uses a seed derived
/// from (seed, r), so the result does not depend on the thread count.
MonteCarloReport mc_existence_probability(const BetaParams& params, int N, int replicates, std::uint64_t seed,
                                          std::optional<double> c = std::nullopt, unsigned threads = 0);

/// True when the MLE exists for the observed table; exhaustive for n <= 12, exact LP beyond.
bool mle_exists(const EdgeCountTable& t);

}  // namespace degseq
