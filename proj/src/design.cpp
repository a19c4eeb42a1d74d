#include "degseq/design.hpp"

#include "degseq/tables.hpp"

#include <sstream>
#include <stdexcept>

namespace degseq {

namespace {

std::string pair_label(int i, int j) { return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; }

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

std::vector<std::string> lifted_labels(int n) {
    std::vector<std::string> out;
    for (auto [i, j] : lifted_list(n)) out.push_back(pair_label(i, j));
    return out;
}

}  // namespace

std::string DesignMatrix::to_csv() const {
    std::ostringstream os;
    os << "param";
    for (const auto& c : col_labels) os << ",\"" << c << '"';
    os << '\n';
    for (int r = 0; r < rows(); ++r) {
        os << row_labels[r];
        for (int c = 0; c < cols(); ++c) os << ',' << entries(r, c);
        os << '\n';
    }
    return os.str();
}

std::string to_string(P1Variant v) {
    switch (v) {
        case P1Variant::zero: return "zero";
        case P1Variant::constant: return "constant";
        case P1Variant::edge: return "edge";
    }
    return "?";
}

P1Variant p1_variant_from_string(const std::string& s) {
    if (s == "zero" || s == "p1-zero") return P1Variant::zero;
    if (s == "constant" || s == "const" || s == "p1-const" || s == "p1-constant") return P1Variant::constant;
    if (s == "edge" || s == "edge-dependent" || s == "p1-edge") return P1Variant::edge;
    throw std::invalid_argument("unknown p1 variant '" + s + "'");
}

DesignMatrix beta_design(int n) {
    require(n >= 2, "beta_design: n >= 2");
    DesignMatrix m{IntMatrix(n, pair_count(n)), {}, {}};
    int c = 0;
    for (auto [i, j] : pair_list(n)) {
        m.entries(i, c) = 1;
        m.entries(j, c) = 1;
        m.col_labels.push_back(pair_label(i, j));
        ++c;
    }
    for (int i = 0; i < n; ++i) m.row_labels.push_back("beta" + std::to_string(i + 1));
    return m;
}

DesignMatrix cayley_design(int n, bool reduced) {
    require(n >= 2, "cayley_design: n >= 2");
    const int np = pair_count(n);
    const int rows = np + (reduced ? n : 2 * n);
    DesignMatrix m{IntMatrix(rows, 2 * np), {}, lifted_labels(n)};
    int p = 0;
    for (auto [i, j] : pair_list(n)) {
        const int up = 2 * p, down = 2 * p + 1;
        m.entries(p, up) = 1;
        m.entries(p, down) = 1;
        // B1: column (i,j) is a_ij; B2: column (j,i) is a_ij
        m.entries(np + i, up) = 1;
        m.entries(np + j, up) = 1;
        if (!reduced) {
            m.entries(np + n + i, down) = 1;
            m.entries(np + n + j, down) = 1;
        }
        m.row_labels.push_back("pair" + pair_label(i, j));
        ++p;
    }
    for (int i = 0; i < n; ++i) m.row_labels.push_back("d" + std::to_string(i + 1));
    if (!reduced)
        for (int i = 0; i < n; ++i) m.row_labels.push_back("d'" + std::to_string(i + 1));
    return m;
}

DesignMatrix poisson_design(int n) {
    require(n >= 2, "poisson_design: n >= 2");
    DesignMatrix m{IntMatrix(2 * n, n * (n - 1)), {}, lifted_labels(n)};
    int c = 0;
    for (auto [i, j] : lifted_list(n)) {
        m.entries(i, c) = 1;
        m.entries(n + j, c) = 1;
        ++c;
    }
    for (int i = 0; i < n; ++i) m.row_labels.push_back("alpha" + std::to_string(i + 1));
    for (int i = 0; i < n; ++i) m.row_labels.push_back("gamma" + std::to_string(i + 1));
    return m;
}

DesignMatrix undirected_poisson_design(int n) {
    auto m = beta_design(n);
    for (int i = 0; i < n; ++i) m.row_labels[i] = "alpha" + std::to_string(i + 1);
    return m;
}

DesignMatrix bt_design(int n) {
    require(n >= 2, "bt_design: n >= 2");
    const int np = pair_count(n);
    DesignMatrix m{IntMatrix(np + n, 2 * np), {}, lifted_labels(n)};
    int p = 0;
    for (auto [i, j] : pair_list(n)) {
        m.entries(p, 2 * p) = 1;
        m.entries(p, 2 * p + 1) = 1;
        m.entries(np + i, 2 * p) = 1;      // (i,j): i beats j
        m.entries(np + j, 2 * p + 1) = 1;  // (j,i): j beats i
        m.row_labels.push_back("pair" + pair_label(i, j));
        ++p;
    }
    for (int i = 0; i < n; ++i) m.row_labels.push_back("out" + std::to_string(i + 1));
    return m;
}

DesignMatrix rasch_design(int k, int l) {
    require(k >= 1 && l >= 1, "rasch_design: k, l >= 1");
    const int units = k * l;
    const int nodes = k + l;
    DesignMatrix m{IntMatrix(units + nodes, 2 * units), {}, {}};
    int p = 0;
    for (int i = 0; i < k; ++i)
        for (int j = k; j < nodes; ++j) {
            m.entries(p, 2 * p) = 1;
            m.entries(p, 2 * p + 1) = 1;
            m.entries(units + i, 2 * p) = 1;
            m.entries(units + j, 2 * p) = 1;
            m.row_labels.push_back("pair" + pair_label(i, j));
            m.col_labels.push_back(pair_label(i, j));
            m.col_labels.push_back(pair_label(j, i));
            ++p;
        }
    for (int i = 0; i < k; ++i) m.row_labels.push_back("subject" + std::to_string(i + 1));
    for (int j = 0; j < l; ++j) m.row_labels.push_back("item" + std::to_string(j + 1));
    return m;
}

DesignMatrix p1_design(int n, P1Variant variant) {
    require(n >= 2, "p1_design: n >= 2");
    const int np = pair_count(n);
    const int rho_rows = variant == P1Variant::zero ? 0 : (variant == P1Variant::constant ? 1 : n + 1);
    const int theta = np;
    const int alpha = np + 1;
    const int beta = alpha + n;
    const int rho = beta + n;
    DesignMatrix m{IntMatrix(rho + rho_rows, 4 * np), {}, {}};
    static const char* state_names[4] = {"00", "10", "01", "11"};
    int p = 0;
    for (auto [i, j] : pair_list(n)) {
        for (int s = 0; s < 4; ++s) {
            const int c = 4 * p + s;
            const int a = s & 1;         // i -> j
            const int b = (s >> 1) & 1;  // j -> i
            m.entries(p, c) = 1;
            m.entries(theta, c) = a + b;
            m.entries(alpha + i, c) += a;
            m.entries(beta + j, c) += a;
            m.entries(alpha + j, c) += b;
            m.entries(beta + i, c) += b;
            if (a && b && rho_rows > 0) {
                m.entries(rho, c) = 1;
                if (variant == P1Variant::edge) {
                    m.entries(rho + 1 + i, c) = 1;
                    m.entries(rho + 1 + j, c) = 1;
                }
            }
            m.col_labels.push_back(pair_label(i, j) + ":" + state_names[s]);
        }
        m.row_labels.push_back("lambda" + pair_label(i, j));
        ++p;
    }
    m.row_labels.push_back("theta");
    for (int i = 0; i < n; ++i) m.row_labels.push_back("alpha" + std::to_string(i + 1));
    for (int i = 0; i < n; ++i) m.row_labels.push_back("beta" + std::to_string(i + 1));
    if (rho_rows > 0) m.row_labels.push_back("rho");
    if (variant == P1Variant::edge)
        for (int i = 0; i < n; ++i) m.row_labels.push_back("rho" + std::to_string(i + 1));
    return m;
}

std::vector<std::vector<int>> sampling_blocks(int units, int block_size) {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(units));
    for (int u = 0; u < units; ++u)
        for (int s = 0; s < block_size; ++s) out[u].push_back(u * block_size + s);
    return out;
}

}  // namespace degseq
