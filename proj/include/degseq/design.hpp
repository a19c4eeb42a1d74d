#pragma once

#include "degseq/matrix.hpp"

#include <string>
#include <vector>

namespace degseq {

/// Integer design matrix with parameter (row) and cell (column) labels.
/// Labels are 1-based for display.
struct DesignMatrix {
    IntMatrix entries;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;

    int rows() const { return entries.rows(); }
    int cols() const { return entries.cols(); }
    int rank() const { return exact_rank(entries); }

    /// Labeled CSV: header row of column labels, one labeled line per parameter.
    std::string to_csv() const;
};

enum class P1Variant { zero, constant, edge };

std::string to_string(P1Variant v);
P1Variant p1_variant_from_string(const std::string& s);

/// n x C(n,2) node-edge incidence matrix; columns (i,j), i<j, lexicographic.
DesignMatrix beta_design(int n);

/// Columns are ordered pairs in grouped order (1,2),(2,1),(1,3),(3,1),...
/// Full: rows C1 (one per unordered pair), B1, B2. Reduced: C1 and B1 only.
DesignMatrix cayley_design(int n, bool reduced);

/// Rows alpha_1..alpha_n (out), gamma_1..gamma_n (in); grouped ordered-pair columns.
DesignMatrix poisson_design(int n);

/// Undirected Poisson: log m_ij = alpha_i + alpha_j, same matrix as beta_design.
DesignMatrix undirected_poisson_design(int n);

/// Rows: one sampling row per unordered pair, then one out-degree row per node.
DesignMatrix bt_design(int n);

/// Subjects are nodes 1..k, items k+1..k+l. Cayley-style matrix on the k*l
/// bipartite pairs: sampling rows, then the B1 block over all k+l nodes.
DesignMatrix rasch_design(int k, int l);

/// Four columns per dyad in state order (0,0),(1,0),(0,1),(1,1).
/// Rows: lambda per dyad, theta, alpha_1..n, beta_1..n, then rho rows per variant.
DesignMatrix p1_design(int n, P1Variant variant);

/// Column indices of one segment/simplex per sampling unit of a design:
/// pairs of lifted columns for Cayley/BT/Rasch, quadruples for p1.
std::vector<std::vector<int>> sampling_blocks(int units, int block_size);

}  // namespace degseq
