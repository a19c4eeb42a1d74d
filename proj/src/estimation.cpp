#include "degseq/estimation.hpp"

#include "degseq/design.hpp"
#include "degseq/errors.hpp"
#include "degseq/log.hpp"
#include "degseq/zoo.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace degseq {

namespace {

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double logistic(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }

struct FreePair {
    int i, j;
    double trials;
};

// Concave objective sum_i target_i b_i - sum_free N log(1 + e^{b_i + b_j}).
struct BetaProblem {
    int n;
    std::vector<FreePair> pairs;
    std::vector<double> target;
    double scale;  // max N, used to report residuals in d-tilde units

    double value(const Eigen::VectorXd& b) const {
        double v = 0;
        for (int i = 0; i < n; ++i) v += target[static_cast<std::size_t>(i)] * b[i];
        for (const auto& p : pairs) v -= p.trials * softplus(b[p.i] + b[p.j]);
        return v;
    }
    Eigen::VectorXd gradient(const Eigen::VectorXd& b) const {
        Eigen::VectorXd g(n);
        for (int i = 0; i < n; ++i) g[i] = target[static_cast<std::size_t>(i)];
        for (const auto& p : pairs) {
            const double m = p.trials * logistic(b[p.i] + b[p.j]);
            g[p.i] -= m;
            g[p.j] -= m;
        }
        return g;
    }
    // Negative Hessian (positive semidefinite).
    Eigen::MatrixXd information(const Eigen::VectorXd& b) const {
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
        for (const auto& p : pairs) {
            const double q = logistic(b[p.i] + b[p.j]);
            const double w = p.trials * q * (1 - q);
            h(p.i, p.i) += w;
            h(p.j, p.j) += w;
            h(p.i, p.j) += w;
            h(p.j, p.i) += w;
        }
        return h;
    }
    double residual(const Eigen::VectorXd& b) const { return gradient(b).cwiseAbs().maxCoeff() / scale; }
};

// Damped Newton with backtracking. The minimum-norm solve handles the flat directions of a face.
int newton(const BetaProblem& prob, Eigen::VectorXd& b, double tol, int max_iter) {
    double f = prob.value(b);
    for (int it = 0; it < max_iter; ++it) {
        if (prob.residual(b) <= tol) return it;
        const Eigen::VectorXd g = prob.gradient(b);
        const Eigen::VectorXd step = prob.information(b).completeOrthogonalDecomposition().solve(g);
        double s = 1.0;
        bool moved = false;
        const double current = prob.residual(b);
        // near the optimum the objective is flat to rounding; fall back to the score there
        const double noise = 1e-12 * std::max(1.0, std::abs(f));
        for (int k = 0; k < 60; ++k, s /= 2) {
            const Eigen::VectorXd trial = b + s * step;
            const double ft = prob.value(trial);
            if (std::isfinite(ft) && (ft >= f || (ft >= f - noise && prob.residual(trial) < current))) {
                b = trial;
                f = ft;
                moved = true;
                break;
            }
        }
        if (!moved) {
            // No ascent left at double precision.
            if (prob.residual(b) <= tol) return it;
            throw NoConvergence("Newton line search stalled at residual " + std::to_string(prob.residual(b)));
        }
        log_debug("newton iteration " + std::to_string(it) + " loglik " + std::to_string(f));
    }
    if (prob.residual(b) <= tol) return max_iter;
    throw NoConvergence("Newton reached the iteration cap");
}

// beta_i <- log target_i - log sum_j N_ij e^{beta_j} / (1 + e^{beta_i + beta_j})
int fixed_point(const BetaProblem& prob, Eigen::VectorXd& b, double tol, int max_iter) {
    for (int i = 0; i < prob.n; ++i)
        if (prob.target[static_cast<std::size_t>(i)] <= 0)
            throw NoConvergence("fixed-point iteration needs positive degrees");
    for (int it = 0; it < max_iter; ++it) {
        if (prob.residual(b) <= tol) return it;
        Eigen::VectorXd denom = Eigen::VectorXd::Zero(prob.n);
        for (const auto& p : prob.pairs) {
            const double e = 1.0 + std::exp(b[p.i] + b[p.j]);
            denom[p.i] += p.trials * std::exp(b[p.j]) / e;
            denom[p.j] += p.trials * std::exp(b[p.i]) / e;
        }
        for (int i = 0; i < prob.n; ++i) b[i] = std::log(prob.target[static_cast<std::size_t>(i)]) - std::log(denom[i]);
    }
    if (prob.residual(b) <= tol) return max_iter;
    throw NoConvergence("fixed-point iteration reached the cap");
}

double max_trials(const EdgeCountTable& t) {
    const auto tr = t.trials_by_pair();
    return tr.empty() ? 1.0 : static_cast<double>(*std::max_element(tr.begin(), tr.end()));
}

void finish(const EdgeCountTable& t, FitResult& r) {
    const int n = t.n();
    std::vector<double> expected(static_cast<std::size_t>(n), 0.0);
    const auto stats = degree_stats(t);
    r.loglik = 0;
    int p = 0;
    for (auto [i, j] : pair_list(n)) {
        const double q = r.p_hat[static_cast<std::size_t>(p)];
        const double N = t.trials(i, j);
        const double x = t.count(i, j);
        r.loglik += xlogy(x, q) + xlogy(N - x, 1 - q);
        expected[static_cast<std::size_t>(i)] += N * q;
        expected[static_cast<std::size_t>(j)] += N * q;
        ++p;
    }
    const double scale = max_trials(t);
    r.moment_residual = 0;
    for (int i = 0; i < n; ++i)
        r.moment_residual = std::max(r.moment_residual,
                                     std::abs(expected[static_cast<std::size_t>(i)] - static_cast<double>(stats.d[static_cast<std::size_t>(i)])) / scale);
}

}  // namespace

double log_likelihood(const EdgeCountTable& t, const BetaParams& params) {
    if (params.n() != t.n()) throw std::invalid_argument("log_likelihood: size mismatch");
    const auto stats = degree_stats(t);
    double v = 0;
    for (int i = 0; i < t.n(); ++i) v += static_cast<double>(stats.d[static_cast<std::size_t>(i)]) * params.beta[static_cast<std::size_t>(i)];
    for (auto [i, j] : pair_list(t.n()))
        v -= t.trials(i, j) * softplus(params.beta[static_cast<std::size_t>(i)] + params.beta[static_cast<std::size_t>(j)]);
    return v;
}

std::vector<double> log_likelihood_gradient(const EdgeCountTable& t, const BetaParams& params) {
    if (params.n() != t.n()) throw std::invalid_argument("log_likelihood_gradient: size mismatch");
    const auto stats = degree_stats(t);
    std::vector<double> g(stats.d.begin(), stats.d.end());
    for (auto [i, j] : pair_list(t.n())) {
        const double m = t.trials(i, j) * edge_probability(params, i, j);
        g[static_cast<std::size_t>(i)] -= m;
        g[static_cast<std::size_t>(j)] -= m;
    }
    return g;
}

FitResult fit_mle(const EdgeCountTable& t, const FitOptions& opts) {
    const int n = t.n();
    if (!opts.assume_interior) {
        const auto C = cayley_design(n, true);
        const auto stat = C.entries.apply(t.lifted());
        if (!interior_lp_check(stat, C).interior)
            throw NonexistentMLE("the degree statistic lies on the boundary of the marginal polytope");
    }

    BetaProblem prob{n, {}, {}, max_trials(t)};
    const auto stats = degree_stats(t);
    prob.target.assign(stats.d.begin(), stats.d.end());
    for (auto [i, j] : pair_list(n)) prob.pairs.push_back({i, j, static_cast<double>(t.trials(i, j))});

    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    FitResult r;
    if (opts.algorithm == FitAlgorithm::newton)
        r.iterations = newton(prob, b, opts.tol, opts.max_iter > 0 ? opts.max_iter : 500);
    else
        r.iterations = fixed_point(prob, b, opts.tol, opts.max_iter > 0 ? opts.max_iter : 100000);

    r.exists = true;
    r.beta_hat = std::vector<double>(b.data(), b.data() + n);
    const BetaParams params(*r.beta_hat);
    for (auto [i, j] : pair_list(n)) r.p_hat.push_back(edge_probability(params, i, j));
    finish(t, r);
    return r;
}

FitResult extended_mle(const EdgeCountTable& t, const FitOptions& opts) {
    const int n = t.n();
    const auto C = cayley_design(n, true);
    auto face = facial_set_of_table(t.lifted(), C);

    std::vector<char> off(static_cast<std::size_t>(C.cols()), 0);
    for (int j : face.co_facial) off[static_cast<std::size_t>(j)] = 1;

    const auto stats = degree_stats(t);
    BetaProblem prob{n, {}, std::vector<double>(stats.d.begin(), stats.d.end()), max_trials(t)};
    std::vector<double> fixed(static_cast<std::size_t>(pair_count(n)), -1.0);
    int p = 0;
    for (auto [i, j] : pair_list(n)) {
        const bool zero = off[static_cast<std::size_t>(2 * p)] != 0;   // cell (i,j) pinned
        const bool one = off[static_cast<std::size_t>(2 * p + 1)] != 0;  // cell (j,i) pinned
        if (zero || one) {
            const double q = zero ? 0.0 : 1.0;
            fixed[static_cast<std::size_t>(p)] = q;
            prob.target[static_cast<std::size_t>(i)] -= q * t.trials(i, j);
            prob.target[static_cast<std::size_t>(j)] -= q * t.trials(i, j);
        } else {
            prob.pairs.push_back({i, j, static_cast<double>(t.trials(i, j))});
        }
        ++p;
    }

    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    FitResult r;
    if (!prob.pairs.empty()) r.iterations = newton(prob, b, opts.tol, opts.max_iter > 0 ? opts.max_iter : 500);

    r.exists = !face.is_proper;
    if (r.exists) r.beta_hat = std::vector<double>(b.data(), b.data() + n);
    p = 0;
    for (auto [i, j] : pair_list(n)) {
        const double q = fixed[static_cast<std::size_t>(p)];
        r.p_hat.push_back(q >= 0 ? q : logistic(b[i] + b[j]));
        ++p;
    }
    r.facial_set = std::move(face);
    finish(t, r);
    return r;
}

double bt_moment_residual(const DirectedCountTable& t, std::span<const double> p_hat) {
    const int n = t.n();
    std::vector<double> gap(static_cast<std::size_t>(n), 0.0);
    double scale = 1.0;
    int p = 0;
    for (auto [i, j] : pair_list(n)) {
        const double N = t.count(i, j) + t.count(j, i);
        scale = std::max(scale, N);
        const double q = p_hat[static_cast<std::size_t>(p++)];
        gap[static_cast<std::size_t>(i)] += t.count(i, j) - N * q;
        gap[static_cast<std::size_t>(j)] += t.count(j, i) - N * (1 - q);
    }
    double r = 0;
    for (double g : gap) r = std::max(r, std::abs(g));
    return r / scale;
}

FitResult fit_bradley_terry(const DirectedCountTable& t, const FitOptions& opts) {
    const int n = t.n();
    if (n < 2) throw ParameterError("Bradley-Terry needs at least two objects");
    if (!bt_existence(t).exists) throw NonexistentMLE("the comparison digraph is not strongly connected");

    std::vector<double> wins(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) wins[static_cast<std::size_t>(i)] += t.count(i, j);

    std::vector<double> pi(static_cast<std::size_t>(n), 1.0 / n);
    auto probabilities = [&] {
        std::vector<double> q;
        for (auto [i, j] : pair_list(n)) q.push_back(pi[static_cast<std::size_t>(i)] / (pi[static_cast<std::size_t>(i)] + pi[static_cast<std::size_t>(j)]));
        return q;
    };

    const int cap = opts.max_iter > 0 ? opts.max_iter : 1000000;
    FitResult r;
    int it = 0;
    for (; it < cap; ++it) {
        if (bt_moment_residual(t, probabilities()) <= opts.tol) break;
        std::vector<double> next(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            double denom = 0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const double N = t.count(i, j) + t.count(j, i);
                if (N > 0) denom += N / (pi[static_cast<std::size_t>(i)] + pi[static_cast<std::size_t>(j)]);
            }
            next[static_cast<std::size_t>(i)] = wins[static_cast<std::size_t>(i)] / denom;
        }
        const double total = std::accumulate(next.begin(), next.end(), 0.0);
        for (auto& v : next) v /= total;
        pi = std::move(next);
    }
    r.p_hat = probabilities();
    r.moment_residual = bt_moment_residual(t, r.p_hat);
    if (r.moment_residual > opts.tol) throw NoConvergence("MM iteration reached the cap");

    r.exists = true;
    r.iterations = it;
    std::vector<double> beta;
    for (double v : pi) beta.push_back(std::log(v));
    r.beta_hat = std::move(beta);
    int p = 0;
    for (auto [i, j] : pair_list(n)) {
        const double q = r.p_hat[static_cast<std::size_t>(p++)];
        r.loglik += xlogy(t.count(i, j), q) + xlogy(t.count(j, i), 1 - q);
    }
    return r;
}

LoglinearFit fit_product_multinomial(const IntMatrix& A, const std::vector<std::vector<int>>& blocks,
                                     std::span<const int> x, const FitOptions& opts) {
    const int cols = A.cols();
    if (static_cast<int>(x.size()) != cols) throw std::invalid_argument("fit_product_multinomial: length mismatch");

    // Work with an independent row set so the Newton system stays well posed.
    const auto keep = independent_rows(A);
    const int r = static_cast<int>(keep.size());
    Eigen::MatrixXd M(r, cols);
    for (int a = 0; a < r; ++a)
        for (int c = 0; c < cols; ++c) M(a, c) = static_cast<double>(A(keep[static_cast<std::size_t>(a)], c));
    Eigen::VectorXd xv(cols);
    for (int c = 0; c < cols; ++c) xv[c] = x[static_cast<std::size_t>(c)];
    const Eigen::VectorXd target = M * xv;

    auto probs = [&](const Eigen::VectorXd& theta) {
        const Eigen::VectorXd eta = M.transpose() * theta;
        Eigen::VectorXd q(cols);
        for (const auto& blk : blocks) {
            double top = -std::numeric_limits<double>::infinity();
            for (int c : blk) top = std::max(top, eta[c]);
            double z = 0;
            for (int c : blk) z += std::exp(eta[c] - top);
            for (int c : blk) q[c] = std::exp(eta[c] - top) / z;
        }
        return q;
    };
    auto value = [&](const Eigen::VectorXd& theta) {
        const Eigen::VectorXd eta = M.transpose() * theta;
        double v = xv.dot(eta);
        for (const auto& blk : blocks) {
            double top = -std::numeric_limits<double>::infinity();
            for (int c : blk) top = std::max(top, eta[c]);
            double z = 0;
            for (int c : blk) z += std::exp(eta[c] - top);
            v -= top + std::log(z);
        }
        return v;
    };

    Eigen::VectorXd theta = Eigen::VectorXd::Zero(r);
    double f = value(theta);
    const int cap = opts.max_iter > 0 ? opts.max_iter : 500;
    LoglinearFit out;
    for (int it = 0; it <= cap; ++it) {
        const Eigen::VectorXd q = probs(theta);
        const Eigen::VectorXd g = target - M * q;
        if (g.cwiseAbs().maxCoeff() <= opts.tol) {
            out.iterations = it;
            out.probabilities.assign(q.data(), q.data() + cols);
            out.moment_residual = g.cwiseAbs().maxCoeff();
            return out;
        }
        // Information matrix: sum over blocks of M_b (diag q_b - q_b q_b^T) M_b^T.
        Eigen::MatrixXd info = Eigen::MatrixXd::Zero(r, r);
        for (const auto& blk : blocks) {
            Eigen::VectorXd mean = Eigen::VectorXd::Zero(r);
            for (int c : blk) mean += q[c] * M.col(c);
            for (int c : blk) {
                const Eigen::VectorXd d = M.col(c) - mean;
                info += q[c] * d * d.transpose();
            }
        }
        const Eigen::VectorXd step = info.completeOrthogonalDecomposition().solve(g);
        double s = 1.0;
        bool moved = false;
        for (int k = 0; k < 60; ++k, s /= 2) {
            const Eigen::VectorXd trial = theta + s * step;
            const double ft = value(trial);
            if (std::isfinite(ft) && ft >= f) {
                theta = trial;
                f = ft;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    throw NoConvergence("product-multinomial Newton did not converge");
}

}  // namespace degseq
