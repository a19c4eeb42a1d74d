#pragma once

#include "degseq/geometry.hpp"
#include "degseq/tables.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace degseq {

// Rasch ----------------------------------------------------------------------

/// Blocking sets: subjects A u B and items C u D partition the table, x = 0 on A x C and
/// x = 1 on B x D, with A u C and B u D both nonempty (so the margins sit on a face).
struct HabermanSets {
    std::vector<int> A, B;  // subjects
    std::vector<int> C, D;  // items
};

struct RaschVerdict {
    bool exists = false;
    bool lp_exists = false;
    std::optional<bool> combinatorial_exists;  // absent when k or l exceeds the search cap
    std::optional<HabermanSets> blocking;
    FacialSet facial_set;  // columns index the k*l subject-item cells
};

inline constexpr int kRaschSearchCap = 10;

/// Both paths when k, l <= kRaschSearchCap, LP only otherwise. Throws ConsistencyError if they disagree.
RaschVerdict rasch_existence(const RaschTable& t);
/// The combinatorial path alone; nullopt means no blocking sets exist. Throws SizeError past the cap.
std::optional<HabermanSets> rasch_blocking_sets(const RaschTable& t);

// Bradley-Terry ----------------------------------------------------------------

struct BtVerdict {
    bool exists = false;
    /// When the win digraph is not strongly connected: a source component, a proper subset
    /// whose members never lost to anyone outside it.
    std::vector<int> never_loses;
};

/// Depth-first strong-connectivity test on the digraph i -> j iff x_ij > 0.
BtVerdict bt_existence(const DirectedCountTable& t);
/// Interior LP on the cone of bt_design, restricted to the compared pairs.
bool bt_lp_existence(const DirectedCountTable& t);
/// Number of facets of the Bradley-Terry marginal polytope, 2^n - 2.
std::int64_t bt_facet_count(int n);

// Poisson --------------------------------------------------------------------

/// Co-facial column sets of the facets of the Poisson cone.
/// Directed (poisson_design columns): each out-row and in-row support, then for each k
/// every cell avoiding k. Undirected (beta_design columns): each node star, then for each k
/// every pair avoiding k.
std::vector<std::vector<int>> poisson_facial_catalog(int n, bool directed);

struct PoissonBound {
    double three_term = 1.0;  // min(1, sum of the three exponential terms)
    double simplified = 1.0;  // min(1, 3 n exp(-(n-1) m*))
    bool simplified_valid = false;  // the simplified form is derived for n >= 7
};

/// Upper bounds on the nonexistence probability; means are in lifted (grouped) order.
PoissonBound poisson_existence_bound(std::span<const double> means, int n);

// p1 -------------------------------------------------------------------------

struct P1Params {
    double theta = 0.0;
    std::vector<double> alpha;  // senders
    std::vector<double> beta;   // receivers
    double rho = 0.0;
    std::vector<double> rho_node;  // edge variant only
};

/// Per dyad (i<j, lexicographic) the probabilities of (0,0), (1,0), (0,1), (1,1).
using DyadProbabilities = std::vector<std::array<double, 4>>;

DyadProbabilities p1_dyad_probabilities(const P1Params& params, P1Variant variant);

struct P1Verdict {
    bool exists = false;
    FacialSet facial_set;
};

P1Verdict p1_existence(const DyadTable& t, P1Variant variant);

/// Fitted dyad probabilities; throws NonexistentMLE when the statistic is on the boundary.
DyadProbabilities p1_fit(const DyadTable& t, P1Variant variant);

struct P1Survey {
    int n = 0;
    P1Variant variant = P1Variant::zero;
    std::int64_t networks = 0;
    std::int64_t distinct_statistics = 0;
    std::int64_t existing_statistics = 0;
    std::int64_t existing_networks = 0;
};

/// Every network on n nodes (4^C(n,2) of them); verdicts are cached per sufficient statistic.
/// Deterministic for any thread count.
P1Survey p1_survey(int n, P1Variant variant, int threads = 1);

/// The network with dyad states given by the base-4 digits of `code` (dyad 0 least significant).
DyadTable p1_network(int n, std::uint64_t code);

}  // namespace degseq
