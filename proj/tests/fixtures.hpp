#pragma once

#include "degseq/io.hpp"
#include "degseq/tables.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace fixtures {

// Four nodes, three trials per pair; degrees sit on a split facet.
inline const char* boundary4_csv =
    "x,0,1,2\n"
    "3,x,2,1\n"
    "2,1,x,3\n"
    "1,2,0,x\n";

// Four nodes, three trials per pair; interior point.
inline const char* interior4_csv =
    "x,2,1,2\n"
    "1,x,0,1\n"
    "2,3,x,3\n"
    "1,2,0,x\n";

inline degseq::EdgeCountTable from_csv(const std::string& csv, int trials) {
    std::istringstream in(csv);
    return degseq::parse_edge_table(in, degseq::Format::csv_matrix, trials);
}

inline degseq::EdgeCountTable boundary4() { return from_csv(boundary4_csv, 3); }
inline degseq::EdgeCountTable interior4() { return from_csv(interior4_csv, 3); }

// Simple graphs whose degree sequences are split-graph boundary points.
inline degseq::EdgeCountTable split4() {
    return from_csv("x,0,1,0\n1,x,0,1\n0,1,x,1\n1,0,0,x\n", 1);
}
inline degseq::EdgeCountTable split5() {
    return from_csv("x,1,0,0,0\n0,x,1,1,0\n1,0,x,1,0\n1,0,0,x,1\n1,1,1,0,x\n", 1);
}
inline degseq::EdgeCountTable split6() {
    return from_csv(
        "x,1,0,1,1,1\n0,x,1,0,0,1\n1,0,x,0,0,0\n0,1,1,x,0,0\n0,1,1,1,x,0\n0,0,1,1,1,x\n", 1);
}

/// Simple graph on n nodes from a bit mask over pairs in lexicographic order.
inline degseq::EdgeCountTable graph_from_bits(int n, unsigned bits) {
    auto t = degseq::EdgeCountTable::zeros(n, 1);
    int p = 0;
    for (auto [i, j] : degseq::pair_list(n)) t.set_count(i, j, (bits >> p++) & 1u);
    return t;
}

}  // namespace fixtures
