#include "degseq/geometry.hpp"

#include "degseq/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace degseq {

namespace {

std::string node_set(const std::vector<int>& v) {
    std::ostringstream out;
    out << '{';
    for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << v[k] + 1;
    out << '}';
    return out.str();
}

std::vector<Rational> to_rational(std::span<const std::int64_t> v) {
    return {v.begin(), v.end()};
}

Rational dot_column(std::span<const Rational> y, const IntMatrix& m, int col) {
    Rational s = 0;
    for (int r = 0; r < m.rows(); ++r)
        if (m(r, col) != 0) s += y[static_cast<std::size_t>(r)] * m(r, col);
    return s;
}

}  // namespace

Rational FacetInequality::slack(std::span<const Rational> y, int n) const {
    switch (kind) {
        case Kind::lower: return y[static_cast<std::size_t>(node)];
        case Kind::upper: return Rational(n - 1) - y[static_cast<std::size_t>(node)];
        case Kind::split: return g_value(S, T, y, n);
    }
    return 0;
}

std::vector<int> FacetInequality::coefficients(int n) const {
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    switch (kind) {
        case Kind::lower: a[static_cast<std::size_t>(node)] = 1; break;
        case Kind::upper: a[static_cast<std::size_t>(node)] = -1; break;
        case Kind::split:
            for (int i : S) a[static_cast<std::size_t>(i)] = -1;
            for (int i : T) a[static_cast<std::size_t>(i)] = 1;
            break;
    }
    return a;
}

std::string FacetInequality::describe() const {
    switch (kind) {
        case Kind::lower: return "y" + std::to_string(node + 1) + " >= 0";
        case Kind::upper: return "y" + std::to_string(node + 1) + " <= n-1";
        case Kind::split: return "g(S=" + node_set(S) + ",T=" + node_set(T) + ") >= 0";
    }
    return {};
}

Rational g_value(std::span<const int> S, std::span<const int> T, std::span<const Rational> y, int n) {
    Rational v = static_cast<long>(S.size()) * (n - 1 - static_cast<long>(T.size()));
    for (int i : S) v -= y[static_cast<std::size_t>(i)];
    for (int i : T) v += y[static_cast<std::size_t>(i)];
    return v;
}

double g_value(std::span<const int> S, std::span<const int> T, std::span<const double> y, int n) {
    double v = static_cast<double>(S.size()) * (n - 1 - static_cast<double>(T.size()));
    for (int i : S) v -= y[static_cast<std::size_t>(i)];
    for (int i : T) v += y[static_cast<std::size_t>(i)];
    return v;
}

bool admissible_split_size(int size, int n) {
    if (n < 3) return false;
    return (size >= 2 && size <= n - 3) || size == n;
}

namespace {

// Calls f(S, T) for every ordered pair of disjoint nonempty subsets, via base-3 labels.
template <class F>
void for_each_split(int n, F&& f) {
    std::vector<int> label(static_cast<std::size_t>(n), 0);
    std::vector<int> S, T;
    while (true) {
        S.clear();
        T.clear();
        for (int i = 0; i < n; ++i) {
            if (label[static_cast<std::size_t>(i)] == 1) S.push_back(i);
            else if (label[static_cast<std::size_t>(i)] == 2) T.push_back(i);
        }
        if (!S.empty() && !T.empty()) f(S, T);
        int k = 0;
        while (k < n && label[static_cast<std::size_t>(k)] == 2) label[static_cast<std::size_t>(k++)] = 0;
        if (k == n) break;
        ++label[static_cast<std::size_t>(k)];
    }
}

void check_exhaustive_size(int n) {
    if (n < 2) throw SizeError("degree polytope needs n >= 2");
    if (n > kExhaustiveCap)
        throw SizeError("exhaustive facet enumeration is capped at n = " + std::to_string(kExhaustiveCap) +
                        "; use the LP check");
}

}  // namespace

std::vector<FacetInequality> degree_polytope_inequalities(int n) {
    check_exhaustive_size(n);
    std::vector<FacetInequality> out;
    if (n != 3) {
        for (int i = 0; i < (n == 2 ? 1 : n); ++i) {
            out.push_back(FacetInequality::lower_bound(i));
            out.push_back(FacetInequality::upper_bound(i));
        }
    }
    for_each_split(n, [&](const std::vector<int>& S, const std::vector<int>& T) {
        if (admissible_split_size(static_cast<int>(S.size() + T.size()), n))
            out.push_back(FacetInequality::split(S, T));
    });
    return out;
}

namespace {

// d-tilde scaled by the lcm of its denominators.
struct ScaledDegrees {
    BigInt den = 1;
    std::vector<BigInt> y;
};

ScaledDegrees scale_degrees(std::span<const Rational> d_tilde) {
    ScaledDegrees s;
    for (const auto& q : d_tilde) s.den = boost::multiprecision::lcm(s.den, denominator(q));
    for (const auto& q : d_tilde) s.y.push_back(numerator(q) * (s.den / denominator(q)));
    return s;
}

// Slack of every inequality in enumeration order; Int is std::int64_t when the scaled data is small.
template <class Int, class F>
void scan_inequalities(const std::vector<Int>& y, const Int& den, int n, F&& visit) {
    if (n != 3) {
        for (int i = 0; i < (n == 2 ? 1 : n); ++i) {
            if (!visit(FacetInequality::Kind::lower, i, nullptr, nullptr, y[static_cast<std::size_t>(i)])) return;
            if (!visit(FacetInequality::Kind::upper, i, nullptr, nullptr, Int(n - 1) * den - y[static_cast<std::size_t>(i)])) return;
        }
    }
    bool go = true;
    for_each_split(n, [&](const std::vector<int>& S, const std::vector<int>& T) {
        if (!go || !admissible_split_size(static_cast<int>(S.size() + T.size()), n)) return;
        Int g = Int(static_cast<long>(S.size()) * (n - 1 - static_cast<long>(T.size()))) * den;
        for (int i : S) g -= y[static_cast<std::size_t>(i)];
        for (int i : T) g += y[static_cast<std::size_t>(i)];
        go = visit(FacetInequality::Kind::split, -1, &S, &T, g);
    });
}

template <class F>
void scan_scaled(std::span<const Rational> d_tilde, int n, F&& visit) {
    const auto s = scale_degrees(d_tilde);
    const BigInt limit = BigInt(1) << 50;
    bool small = s.den < limit;
    for (const auto& v : s.y) small = small && v < limit && v > -limit;
    if (small) {
        std::vector<std::int64_t> y;
        for (const auto& v : s.y) y.push_back(v.convert_to<std::int64_t>());
        scan_inequalities<std::int64_t>(y, s.den.convert_to<std::int64_t>(), n, visit);
    } else {
        scan_inequalities<BigInt>(s.y, s.den, n, visit);
    }
}

FacetInequality make_inequality(FacetInequality::Kind kind, int node, const std::vector<int>* S, const std::vector<int>* T) {
    if (kind == FacetInequality::Kind::split) return FacetInequality::split(*S, *T);
    return kind == FacetInequality::Kind::lower ? FacetInequality::lower_bound(node) : FacetInequality::upper_bound(node);
}

}  // namespace

BoundaryVerdict mp_boundary_check(std::span<const Rational> d_tilde, int n) {
    check_exhaustive_size(n);
    if (static_cast<int>(d_tilde.size()) != n) throw std::invalid_argument("mp_boundary_check: length mismatch");

    BoundaryVerdict v;
    scan_scaled(d_tilde, n, [&](FacetInequality::Kind kind, int node, const std::vector<int>* S, const std::vector<int>* T,
                                const auto& slack) {
        ++v.checked;
        if (slack == 0) v.tight.push_back(make_inequality(kind, node, S, T));
        else if (slack < 0) v.violated.push_back(make_inequality(kind, node, S, T));
        return true;
    });

    if (!v.violated.empty()) v.position = Position::outside;
    else if (!v.tight.empty()) v.position = Position::boundary;
    else v.position = Position::interior;
    return v;
}

bool mp_interior(std::span<const Rational> d_tilde, int n) {
    check_exhaustive_size(n);
    if (static_cast<int>(d_tilde.size()) != n) throw std::invalid_argument("mp_interior: length mismatch");
    bool interior = true;
    scan_scaled(d_tilde, n, [&](FacetInequality::Kind, int, const std::vector<int>*, const std::vector<int>*, const auto& slack) {
        interior = slack > 0;
        return interior;
    });
    return interior;
}

BoundaryVerdict mp_boundary_check(const DegreeStats& stats, int n) {
    return mp_boundary_check(std::span<const Rational>(stats.d_tilde), n);
}

InteriorVerdict interior_lp_check(std::span<const Rational> t, const DesignMatrix& C, LpMode mode) {
    const IntMatrix& m = C.entries;
    if (static_cast<int>(t.size()) != m.rows()) throw std::invalid_argument("interior_lp_check: length mismatch");
    const int k = m.cols();

    // x' = z + s 1 with z, s >= 0; maximize s.
    LinearProgram lp(k + 1);
    lp.objective[static_cast<std::size_t>(k)] = 1;
    for (int r = 0; r < m.rows(); ++r) {
        std::vector<Rational> coef(static_cast<std::size_t>(k + 1));
        std::int64_t rowsum = 0;
        for (int j = 0; j < k; ++j) {
            coef[static_cast<std::size_t>(j)] = m(r, j);
            rowsum += m(r, j);
        }
        coef[static_cast<std::size_t>(k)] = rowsum;
        lp.add_row(std::move(coef), Sense::eq, t[static_cast<std::size_t>(r)]);
    }

    const auto sol = solve_lp(lp, mode);
    if (sol.status == LpStatus::infeasible)
        throw LpFailure("interior check: the statistic is not in the cone of the design");

    InteriorVerdict v;
    v.certified = mode == LpMode::exact;
    if (sol.status == LpStatus::unbounded) {
        v.interior = true;
        v.unbounded = true;
        return v;
    }
    v.s_star_value = sol.objective_value;
    if (mode == LpMode::exact) {
        v.s_star = sol.objective_exact;
        v.interior = v.s_star > 0;
    } else {
        v.s_star = Rational(sol.objective_value);
        v.interior = sol.objective_value > 1e-9;
    }
    v.witness.resize(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j)
        v.witness[static_cast<std::size_t>(j)] = sol.x[static_cast<std::size_t>(j)] + sol.x[static_cast<std::size_t>(k)];
    return v;
}

InteriorVerdict interior_lp_check(std::span<const std::int64_t> t, const DesignMatrix& C, LpMode mode) {
    const auto q = to_rational(t);
    return interior_lp_check(std::span<const Rational>(q), C, mode);
}

std::vector<std::string> FacialSet::cell_labels(const DesignMatrix& C) const {
    std::vector<std::string> out;
    for (int j : cells) out.push_back(C.col_labels[static_cast<std::size_t>(j)]);
    return out;
}

std::vector<std::string> FacialSet::co_facial_labels(const DesignMatrix& C) const {
    std::vector<std::string> out;
    for (int j : co_facial) out.push_back(C.col_labels[static_cast<std::size_t>(j)]);
    return out;
}

std::vector<int> cells_from_certificate(std::span<const Rational> certificate, const DesignMatrix& C) {
    std::vector<int> cells;
    for (int j = 0; j < C.cols(); ++j) {
        const Rational v = dot_column(certificate, C.entries, j);
        if (v > 0) throw std::invalid_argument("certificate is positive on column " + C.col_labels[static_cast<std::size_t>(j)]);
        if (v == 0) cells.push_back(j);
    }
    return cells;
}

FacialSet facial_set(std::span<const Rational> t, const DesignMatrix& C, LpMode mode,
                     std::span<const int> feasible_hint) {
    const IntMatrix& m = C.entries;
    const int rows = m.rows();
    const int k = m.cols();
    if (static_cast<int>(t.size()) != rows) throw std::invalid_argument("facial_set: length mismatch");
    if (!feasible_hint.empty() && static_cast<int>(feasible_hint.size()) != k)
        throw std::invalid_argument("facial_set: hint length mismatch");

    // 0 = undecided, 1 = facial, -1 = co-facial
    std::vector<int> state(static_cast<std::size_t>(k), 0);
    for (int j = 0; j < static_cast<int>(feasible_hint.size()); ++j)
        if (feasible_hint[static_cast<std::size_t>(j)] > 0) state[static_cast<std::size_t>(j)] = 1;

    LinearProgram lp(rows);
    for (int r = 0; r < rows; ++r) lp.set_bounds(r, Rational(-1), Rational(1));
    lp.add_row(std::vector<Rational>(t.begin(), t.end()), Sense::eq, 0);
    for (int j = 0; j < k; ++j) {
        std::vector<Rational> coef(static_cast<std::size_t>(rows));
        for (int r = 0; r < rows; ++r) coef[static_cast<std::size_t>(r)] = m(r, j);
        lp.add_row(std::move(coef), Sense::ge, 0);
    }

    std::vector<Rational> certificate(static_cast<std::size_t>(rows), Rational(0));
    for (int j = 0; j < k; ++j) {
        if (state[static_cast<std::size_t>(j)] != 0) continue;
        for (int r = 0; r < rows; ++r) lp.objective[static_cast<std::size_t>(r)] = m(r, j);
        const auto sol = solve_lp(lp, mode);
        if (sol.status != LpStatus::optimal) throw LpFailure("facial-set LP did not reach an optimum");

        std::vector<Rational> y(static_cast<std::size_t>(rows));
        for (int r = 0; r < rows; ++r)
            y[static_cast<std::size_t>(r)] =
                mode == LpMode::exact ? sol.x_exact[static_cast<std::size_t>(r)] : Rational(sol.x[static_cast<std::size_t>(r)]);
        const bool positive = mode == LpMode::exact ? sol.objective_exact > 0 : sol.objective_value > 1e-9;
        if (!positive) {
            state[static_cast<std::size_t>(j)] = 1;
            continue;
        }
        // Every column this y separates is co-facial too.
        for (int c = 0; c < k; ++c) {
            if (state[static_cast<std::size_t>(c)] != 0) continue;
            const Rational v = dot_column(y, m, c);
            if (mode == LpMode::exact ? v > 0 : to_double(v) > 1e-9) state[static_cast<std::size_t>(c)] = -1;
        }
        state[static_cast<std::size_t>(j)] = -1;
        for (int r = 0; r < rows; ++r) certificate[static_cast<std::size_t>(r)] -= y[static_cast<std::size_t>(r)];
    }

    FacialSet out;
    for (int j = 0; j < k; ++j) (state[static_cast<std::size_t>(j)] > 0 ? out.cells : out.co_facial).push_back(j);
    out.is_proper = !out.co_facial.empty();
    out.certificate = std::move(certificate);

    // Exact sign check of the certificate against the claimed split.
    out.certified = true;
    for (int j = 0; j < k; ++j) {
        const Rational v = dot_column(out.certificate, m, j);
        const bool ok = state[static_cast<std::size_t>(j)] > 0 ? v == 0 : v < 0;
        if (!ok) out.certified = false;
    }
    if (mode == LpMode::exact && !out.certified) throw LpFailure("facial-set certificate failed its sign check");
    return out;
}

FacialSet facial_set_of_table(std::span<const int> x, const DesignMatrix& C, LpMode mode) {
    const auto t = C.entries.apply(x);
    const auto q = to_rational(t);
    return facial_set(std::span<const Rational>(q), C, mode, x);
}

SplitSearch split_certificate(const EdgeCountTable& g) {
    const int n = g.n();
    check_exhaustive_size(n);
    if (!g.simple()) throw ParameterError("split certificates are defined for simple graphs (N = 1)");

    std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g.count(std::min(i, j), std::max(i, j)) == 1;

    SplitSearch out;
    const auto stats = degree_stats(g);
    for (int i = 0; i < n; ++i) {
        if (stats.d[static_cast<std::size_t>(i)] == 0) out.isolated.push_back(i);
        if (stats.d[static_cast<std::size_t>(i)] == n - 1) out.dominating.push_back(i);
    }

    for_each_split(n, [&](const std::vector<int>& S, const std::vector<int>& T) {
        std::vector<int> R;
        for (int i = 0; i < n; ++i)
            if (std::find(S.begin(), S.end(), i) == S.end() && std::find(T.begin(), T.end(), i) == T.end()) R.push_back(i);
        auto a = [&](int i, int j) { return adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
        for (std::size_t p = 0; p < S.size(); ++p)
            for (std::size_t q = p + 1; q < S.size(); ++q)
                if (!a(S[p], S[q])) return;
        for (std::size_t p = 0; p < T.size(); ++p)
            for (std::size_t q = p + 1; q < T.size(); ++q)
                if (a(T[p], T[q])) return;
        for (int r : R) {
            for (int s : S)
                if (!a(s, r)) return;
            for (int t : T)
                if (a(t, r)) return;
        }
        out.all.push_back({S, T});
    });

    auto better = [](const SplitCertificate& a, const SplitCertificate& b) {
        const auto sa = a.S.size() + a.T.size(), sb = b.S.size() + b.T.size();
        if (sa != sb) return sa > sb;
        if (a.S.size() != b.S.size()) return a.S.size() > b.S.size();
        if (a.S != b.S) return a.S < b.S;
        return a.T < b.T;
    };
    std::sort(out.all.begin(), out.all.end(), better);
    if (!out.all.empty()) out.certificate = out.all.front();
    return out;
}

}  // namespace degseq
