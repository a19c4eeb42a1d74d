#pragma once

#include "degseq/design.hpp"
#include "degseq/lp.hpp"
#include "degseq/rational.hpp"
#include "degseq/tables.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace degseq {

/// Largest n for the exhaustive (S,T) enumeration (3^12 labelings).
inline constexpr int kExhaustiveCap = 12;

/// One inequality of the degree-sequence polytope, written as slack(y) >= 0.
struct FacetInequality {
    enum class Kind { lower, upper, split };

    Kind kind = Kind::lower;
    int node = -1;       // lower: y_node >= 0, upper: y_node <= n-1
    std::vector<int> S;  // split: g(S,T,y,n) >= 0
    std::vector<int> T;

    static FacetInequality lower_bound(int i) { return {Kind::lower, i, {}, {}}; }
    static FacetInequality upper_bound(int i) { return {Kind::upper, i, {}, {}}; }
    static FacetInequality split(std::vector<int> s, std::vector<int> t) {
        return {Kind::split, -1, std::move(s), std::move(t)};
    }

    Rational slack(std::span<const Rational> y, int n) const;
    /// Coefficient vector a with slack(y) = const + a.y.
    std::vector<int> coefficients(int n) const;
    std::string describe() const;  // 1-based

    friend bool operator==(const FacetInequality&, const FacetInequality&) = default;
};

/// g(S,T,y,n) = |S|(n-1-|T|) - sum_S y + sum_T y.
Rational g_value(std::span<const int> S, std::span<const int> T, std::span<const Rational> y, int n);
double g_value(std::span<const int> S, std::span<const int> T, std::span<const double> y, int n);

/// Whether |S u T| is in the admissible family {2, ..., n-3} u {n}.
bool admissible_split_size(int size, int n);

/// All inequalities used by the exhaustive check: degree bounds (n >= 4) and split inequalities.
/// n = 3 has no degree facets; its polytope is cut out by the |S u T| = 3 inequalities alone.
/// n = 2 uses the degree bounds of node 1.
std::vector<FacetInequality> degree_polytope_inequalities(int n);

enum class Position { interior, boundary, outside };

struct BoundaryVerdict {
    Position position = Position::interior;
    std::vector<FacetInequality> tight;     // slack exactly 0
    std::vector<FacetInequality> violated;  // slack < 0 (never for observed data)
    long long checked = 0;
};

/// Exhaustive membership test of d-tilde against the facet inequalities. Exact arithmetic.
/// Throws SizeError for n > kExhaustiveCap.
BoundaryVerdict mp_boundary_check(std::span<const Rational> d_tilde, int n);
BoundaryVerdict mp_boundary_check(const DegreeStats& stats, int n);
/// Same test without the report; stops at the first non-strict inequality.
bool mp_interior(std::span<const Rational> d_tilde, int n);

struct InteriorVerdict {
    bool interior = false;
    bool unbounded = false;  // s* unbounded (cone with recession direction)
    Rational s_star;         // exact mode
    double s_star_value = 0.0;
    std::vector<double> witness;  // x' achieving s*
    bool certified = true;        // false in float mode
};

/// max s s.t. C x' = t, x' >= s 1, s >= 0. Interior iff s* > 0.
InteriorVerdict interior_lp_check(std::span<const Rational> t, const DesignMatrix& C, LpMode mode = LpMode::exact);
InteriorVerdict interior_lp_check(std::span<const std::int64_t> t, const DesignMatrix& C,
                                  LpMode mode = LpMode::exact);

struct FacialSet {
    std::vector<int> cells;      // column indices of the facial set
    std::vector<int> co_facial;  // complement
    std::vector<Rational> certificate;  // <y, c_j> = 0 on cells, < 0 off cells
    bool is_proper = false;             // some column lies off the face
    bool certified = true;              // signs verified exactly

    std::vector<std::string> cell_labels(const DesignMatrix& C) const;
    std::vector<std::string> co_facial_labels(const DesignMatrix& C) const;
};

/// One LP per undecided column: max <c_j, y> s.t. t.y = 0, C^T y >= 0, -1 <= y <= 1.
/// Columns with positive optimum are co-facial. `feasible_hint`, when given, is a nonnegative x'
/// with C x' = t; its support is known to be facial and is skipped.
FacialSet facial_set(std::span<const Rational> t, const DesignMatrix& C, LpMode mode = LpMode::exact,
                     std::span<const int> feasible_hint = {});

/// Facial set of the cone spanned by the columns of C for an observed table x' (t = C x').
FacialSet facial_set_of_table(std::span<const int> x, const DesignMatrix& C, LpMode mode = LpMode::exact);

/// Re-derive the cell set from a certificate alone: {j : <cert, c_j> = 0}; throws if any column is positive.
std::vector<int> cells_from_certificate(std::span<const Rational> certificate, const DesignMatrix& C);

struct SplitCertificate {
    std::vector<int> S;  // clique
    std::vector<int> T;  // stable set
};

struct SplitSearch {
    std::optional<SplitCertificate> certificate;
    std::vector<SplitCertificate> all;  // every (S,T) meeting the four conditions
    std::vector<int> isolated;          // d_i = 0
    std::vector<int> dominating;        // d_i = n-1
};

/// Search for S (clique) and T (stable set) with every S-node adjacent to all nodes outside S u T
/// and no T-node adjacent to them. Preference: larger |S u T|, then larger |S|, then lexicographic.
SplitSearch split_certificate(const EdgeCountTable& g);

}  // namespace degseq
