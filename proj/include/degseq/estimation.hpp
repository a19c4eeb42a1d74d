#pragma once

#include "degseq/geometry.hpp"
#include "degseq/tables.hpp"

#include <optional>
#include <vector>

namespace degseq {

struct FitResult {
    bool exists = false;
    std::optional<std::vector<double>> beta_hat;
    /// p_hat[pair_index(i,j)] for i<j. Beta model: edge probability; Bradley-Terry: P(i beats j).
    std::vector<double> p_hat;
    std::optional<FacialSet> facial_set;
    /// Binomial log-likelihood without the constant sum of log C(N, x).
    double loglik = 0.0;
    int iterations = 0;
    /// Infinity norm of the moment equations, scaled per pair by the trial count
    /// (equals |A p_hat - d_tilde| when all N_ij are equal).
    double moment_residual = 0.0;
};

enum class FitAlgorithm { newton, fixed_point };

struct FitOptions {
    double tol = 1e-10;
    int max_iter = 0;  // 0: 500 Newton steps or 100000 fixed-point sweeps
    FitAlgorithm algorithm = FitAlgorithm::newton;
    /// Skip the exact existence check (the caller already knows the statistic is interior).
    bool assume_interior = false;
};

/// sum_i d_i beta_i - sum_{i<j} N_ij log(1 + exp(beta_i + beta_j)).
double log_likelihood(const EdgeCountTable& t, const BetaParams& params);
/// d - sum_j N_ij p_ij(beta).
std::vector<double> log_likelihood_gradient(const EdgeCountTable& t, const BetaParams& params);

/// Throws NonexistentMLE when the degree statistic is on the boundary, NoConvergence on the cap.
FitResult fit_mle(const EdgeCountTable& t, const FitOptions& opts = {});

/// Always succeeds for valid data: identifies the facial set exactly, pins the co-facial pairs to
/// their observed 0/1 frequencies and maximizes the likelihood over the remaining pairs.
FitResult extended_mle(const EdgeCountTable& t, const FitOptions& opts = {});

/// Bradley-Terry fit by minorization-maximization; counts x_ij = wins of i over j.
/// beta is normalized so that sum_i exp(beta_i) = 1. Throws NonexistentMLE unless the
/// comparison graph is strongly connected.
FitResult fit_bradley_terry(const DirectedCountTable& t, const FitOptions& opts = {});

/// Largest |wins_i - sum_j N_ij p_ij| / max N over nodes.
double bt_moment_residual(const DirectedCountTable& t, std::span<const double> p_hat);

struct LoglinearFit {
    std::vector<double> probabilities;  // one per column, summing to 1 within each block
    int iterations = 0;
    double moment_residual = 0.0;  // |A (m - x)|_inf with m the fitted means
};

/// Product-multinomial log-linear MLE: one observation per block of columns, cell log-probabilities
/// linear in the rows of A. Assumes the statistic is interior; throws NoConvergence otherwise.
LoglinearFit fit_product_multinomial(const IntMatrix& A, const std::vector<std::vector<int>>& blocks,
                                     std::span<const int> x, const FitOptions& opts = {});

}  // namespace degseq
