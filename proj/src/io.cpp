#include "degseq/io.hpp"

#include "degseq/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <istream>
#include <sstream>

namespace degseq {

namespace {

using json = nlohmann::json;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\"");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\"");
    return std::string(s.substr(b, e - b + 1));
}

using Grid = std::vector<std::vector<std::string>>;

Grid read_grid(std::istream& in) {
    Grid grid;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::vector<std::string> row;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) row.push_back(trim(field));
        if (!line.empty() && line.back() == ',') row.emplace_back();
        grid.push_back(std::move(row));
    }
    if (grid.empty()) throw ParseError("empty CSV input");
    return grid;
}

bool is_diag_marker(const std::string& s) { return s == "x" || s == "X" || s == "\xC3\x97"; }

int parse_int(const std::string& s, int row, int col) {
    int v = 0;
    const auto* b = s.data();
    const auto* e = s.data() + s.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e)
        throw ParseError("cell (" + std::to_string(row + 1) + "," + std::to_string(col + 1) + "): '" + s +
                         "' is not an integer");
    return v;
}

/// Square grid with diagonal markers; returns n.
int check_square(const Grid& g) {
    const int n = static_cast<int>(g.size());
    for (int r = 0; r < n; ++r) {
        if (static_cast<int>(g[r].size()) != n)
            throw ParseError("row " + std::to_string(r + 1) + " has " + std::to_string(g[r].size()) +
                             " fields, expected " + std::to_string(n));
        if (!is_diag_marker(g[r][r]) && !g[r][r].empty())
            throw ParseError("diagonal cell " + std::to_string(r + 1) + " must be 'x'");
    }
    if (n < 2) throw ParseError("need at least 2 nodes");
    return n;
}

std::pair<int, int> parse_key(const std::string& key, int n) {
    const auto comma = key.find(',');
    if (comma == std::string::npos) throw ParseError("pair key '" + key + "' must look like \"i,j\"");
    const int i = parse_int(trim(key.substr(0, comma)), 0, 0) - 1;
    const int j = parse_int(trim(key.substr(comma + 1)), 0, 0) - 1;
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw ParseError("pair key '" + key + "' out of range");
    return {i, j};
}

json read_json(std::istream& in) {
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("JSON: ") + e.what());
    }
}

int json_int(const json& v, const std::string& what) {
    if (!v.is_number_integer()) throw ParseError(what + " must be an integer");
    return v.get<int>();
}

int json_n(const json& doc) {
    if (!doc.is_object() || !doc.contains("n")) throw ParseError("JSON table needs an \"n\" field");
    const int n = json_int(doc["n"], "n");
    if (n < 2) throw ParseError("need at least 2 nodes");
    return n;
}

/// A fully filled symmetric 0/1 matrix with one trial per pair is an ordinary
/// adjacency matrix; it can never satisfy the complement convention, so there is no ambiguity.
bool symmetric_adjacency(const Grid& g, const std::vector<int>& trials) {
    if (!std::all_of(trials.begin(), trials.end(), [](int v) { return v == 1; })) return false;
    const int n = static_cast<int>(g.size());
    for (auto [i, j] : pair_list(n))
        if (g[i][j].empty() || g[i][j] != g[j][i]) return false;
    return true;
}

EdgeCountTable edge_from_grid(const Grid& g, const std::vector<int>& trials) {
    const int n = check_square(g);
    const bool mirrored = symmetric_adjacency(g, trials);
    std::vector<int> counts;
    for (auto [i, j] : pair_list(n)) {
        const auto& up = g[i][j];
        const auto& lo = g[j][i];
        const int N = trials[pair_index(i, j, n)];
        int x;
        if (!up.empty()) {
            x = parse_int(up, i, j);
            if (!mirrored && !lo.empty() && parse_int(lo, j, i) != N - x)
                throw ConsistencyError("cells (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") and (" +
                                       std::to_string(j + 1) + "," + std::to_string(i + 1) + ") do not sum to N=" +
                                       std::to_string(N));
        } else if (!lo.empty()) {
            x = N - parse_int(lo, j, i);
        } else {
            throw ParseError("pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") has no count");
        }
        if (x < 0 || x > N)
            throw ConsistencyError("count at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                   ") outside [0, " + std::to_string(N) + "]");
        counts.push_back(x);
    }
    return EdgeCountTable(n, trials, std::move(counts));
}

EdgeCountTable edge_from_json(const json& doc, std::optional<int> scalar_trials) {
    const int n = json_n(doc);
    const auto m = static_cast<std::size_t>(pair_count(n));
    std::vector<int> trials(m, scalar_trials.value_or(1));
    if (doc.contains("trials")) {
        const auto& tr = doc["trials"];
        if (tr.is_number_integer()) {
            std::fill(trials.begin(), trials.end(), tr.get<int>());
        } else if (tr.is_object()) {
            for (const auto& [key, v] : tr.items()) {
                auto [i, j] = parse_key(key, n);
                trials[pair_index(i, j, n)] = json_int(v, "trials[" + key + "]");
            }
        } else {
            throw ParseError("\"trials\" must be an integer or an object");
        }
    }
    std::vector<std::optional<int>> upper(m), lower(m);
    if (doc.contains("counts")) {
        if (!doc["counts"].is_object()) throw ParseError("\"counts\" must be an object");
        for (const auto& [key, v] : doc["counts"].items()) {
            auto [i, j] = parse_key(key, n);
            (i < j ? upper : lower)[pair_index(i, j, n)] = json_int(v, "counts[" + key + "]");
        }
    }
    std::vector<int> counts(m, 0);
    for (std::size_t p = 0; p < m; ++p) {
        const int N = trials[p];
        if (upper[p] && lower[p] && *upper[p] + *lower[p] != N)
            throw ConsistencyError("pair counts do not sum to their trials");
        // missing pairs default to zero successes
        counts[p] = upper[p] ? *upper[p] : (lower[p] ? N - *lower[p] : 0);
    }
    return EdgeCountTable(n, std::move(trials), std::move(counts));
}

}  // namespace

Format format_from_path(const std::string& path) {
    auto lower = path;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    return lower.size() >= 5 && lower.ends_with(".json") ? Format::json : Format::csv_matrix;
}

EdgeCountTable parse_edge_table(std::istream& in, Format format, std::optional<int> trials) {
    if (trials && *trials < 1) throw ParseError("trials must be positive");
    if (format == Format::json) return edge_from_json(read_json(in), trials);
    const Grid g = read_grid(in);
    const int n = check_square(g);
    return edge_from_grid(g, std::vector<int>(static_cast<std::size_t>(pair_count(n)), trials.value_or(1)));
}

EdgeCountTable parse_edge_table(std::istream& counts, std::istream& trials_matrix) {
    const Grid g = read_grid(counts);
    const Grid tg = read_grid(trials_matrix);
    const int n = check_square(g);
    if (check_square(tg) != n) throw ParseError("trials matrix size differs from counts matrix");
    std::vector<int> trials;
    for (auto [i, j] : pair_list(n)) {
        const int N = parse_int(tg[i][j], i, j);
        if (N < 1) throw ConsistencyError("trials must be positive");
        trials.push_back(N);
    }
    return edge_from_grid(g, trials);
}

DirectedCountTable parse_directed_table(std::istream& in, Format format) {
    if (format == Format::json) {
        const json doc = read_json(in);
        const int n = json_n(doc);
        auto t = DirectedCountTable::zeros(n);
        if (doc.contains("counts"))
            for (const auto& [key, v] : doc["counts"].items()) {
                auto [i, j] = parse_key(key, n);
                t.set_count(i, j, json_int(v, "counts[" + key + "]"));
            }
        return t;
    }
    const Grid g = read_grid(in);
    const int n = check_square(g);
    auto t = DirectedCountTable::zeros(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) t.set_count(i, j, parse_int(g[i][j], i, j));
    return t;
}

DyadTable parse_dyad_table(std::istream& in, Format format) {
    const DirectedCountTable d = parse_directed_table(in, format);
    const int n = d.n();
    std::vector<int> adj(static_cast<std::size_t>(n * n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) adj[static_cast<std::size_t>(i * n + j)] = d.count(i, j);
    return DyadTable::from_adjacency(n, adj);
}

RaschTable parse_rasch_table(std::istream& in, Format format) {
    std::vector<std::vector<int>> rows;
    if (format == Format::json) {
        const json doc = read_json(in);
        if (!doc.is_object() || !doc.contains("responses") || !doc["responses"].is_array())
            throw ParseError("Rasch JSON needs a \"responses\" array of arrays");
        for (const auto& r : doc["responses"]) {
            std::vector<int> row;
            for (const auto& v : r) row.push_back(json_int(v, "response"));
            rows.push_back(std::move(row));
        }
    } else {
        const Grid g = read_grid(in);
        for (std::size_t r = 0; r < g.size(); ++r) {
            std::vector<int> row;
            for (std::size_t c = 0; c < g[r].size(); ++c)
                row.push_back(parse_int(g[r][c], static_cast<int>(r), static_cast<int>(c)));
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) throw ParseError("empty response matrix");
    const auto l = rows.front().size();
    std::vector<int> flat;
    for (const auto& r : rows) {
        if (r.size() != l) throw ParseError("ragged response matrix");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return RaschTable(static_cast<int>(rows.size()), static_cast<int>(l), std::move(flat));
}

AnyTable parse_table(std::istream& in, Format format, TableKind kind, std::optional<int> trials) {
    switch (kind) {
        case TableKind::edge: return parse_edge_table(in, format, trials);
        case TableKind::directed: return parse_directed_table(in, format);
        case TableKind::dyad: return parse_dyad_table(in, format);
    }
    throw std::logic_error("unknown table kind");
}

namespace {

template <class Cell>
std::string matrix_csv(int n, Cell cell) {
    std::ostringstream os;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) os << ',';
            if (i == j)
                os << 'x';
            else
                os << cell(i, j);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace

std::string to_csv(const EdgeCountTable& t) {
    return matrix_csv(t.n(), [&](int i, int j) { return t.count(i, j); });
}

std::string to_csv(const DirectedCountTable& t) {
    return matrix_csv(t.n(), [&](int i, int j) { return t.count(i, j); });
}

std::string to_csv(const DyadTable& t) {
    return matrix_csv(t.n(), [&](int i, int j) {
        const int s = i < j ? t.state(i, j) : t.state(j, i);
        // state bit 0 is the lower-index -> higher-index edge
        return i < j ? (s & 1) : ((s >> 1) & 1);
    });
}

}  // namespace degseq
