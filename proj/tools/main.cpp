// degseq: command-line front end. JSON on stdout, diagnostics on stderr.
//
// Exit codes: 0 ok, 1 the MLE does not exist (output is still valid),
// 2 input or usage error, 3 size or parameter error, 4 internal solver failure.

#include "degseq/asymptotics.hpp"
#include "degseq/design.hpp"
#include "degseq/enumeration.hpp"
#include "degseq/errors.hpp"
#include "degseq/estimation.hpp"
#include "degseq/geometry.hpp"
#include "degseq/io.hpp"
#include "degseq/log.hpp"
#include "degseq/zoo.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

using json = nlohmann::json;
using namespace degseq;

namespace {

enum class Model { beta, bt, poisson, rasch, p1_zero, p1_const, p1_edge };

const std::map<std::string, Model> kModels{
    {"beta", Model::beta},         {"bt", Model::bt},             {"poisson", Model::poisson},
    {"rasch", Model::rasch},       {"p1-zero", Model::p1_zero},   {"p1-const", Model::p1_const},
    {"p1-edge", Model::p1_edge},
};

bool is_p1(Model m) { return m == Model::p1_zero || m == Model::p1_const || m == Model::p1_edge; }

P1Variant p1_variant(Model m) {
    switch (m) {
        case Model::p1_const: return P1Variant::constant;
        case Model::p1_edge: return P1Variant::edge;
        default: return P1Variant::zero;
    }
}

struct Options {
    std::string model = "beta";
    std::optional<int> trials;
    int n = 4;
    int k = 2;  // Rasch subjects
    int l = 2;  // Rasch items
    int reps = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    bool floating = false;
    bool pretty = false;
    bool extended = false;
    bool facets = false;
    bool vertices = false;
    std::vector<double> beta;
    std::optional<double> c;
    std::optional<double> C;
    std::string csv_out;
    std::string input;

    Model parsed_model() const { return kModels.at(model); }
    LpMode lp_mode() const { return floating ? LpMode::floating : LpMode::exact; }
};

struct ExitStatus {
    int code = 0;
};

json node_pair(int i, int j) { return json::array({std::to_string(i + 1), std::to_string(j + 1)}); }

json rational_array(std::span<const Rational> v) {
    json out = json::array();
    for (const auto& q : v) out.push_back(to_string(q));
    return out;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return in;
}

EdgeCountTable read_edge_table(const Options& o) {
    auto in = open_input(o.input);
    return parse_edge_table(in, format_from_path(o.input), o.trials);
}

DirectedCountTable read_directed_table(const Options& o) {
    auto in = open_input(o.input);
    return parse_directed_table(in, format_from_path(o.input));
}

DyadTable read_dyad_table(const Options& o) {
    auto in = open_input(o.input);
    return parse_dyad_table(in, format_from_path(o.input));
}

RaschTable read_rasch_table(const Options& o) {
    auto in = open_input(o.input);
    return parse_rasch_table(in, format_from_path(o.input));
}

// Cells of a lifted (directed) column list as node pairs.
json lifted_cells(std::span<const int> cols, int n) {
    const auto cells = lifted_list(n);
    json out = json::array();
    for (int c : cols) out.push_back(node_pair(cells[static_cast<std::size_t>(c)].first, cells[static_cast<std::size_t>(c)].second));
    return out;
}

json dyad_cells(std::span<const int> cols, int n) {
    const auto pairs = pair_list(n);
    json out = json::array();
    for (int c : cols) {
        const auto [i, j] = pairs[static_cast<std::size_t>(c / 4)];
        out.push_back({{"dyad", node_pair(i, j)}, {"state", c % 4}});
    }
    return out;
}

json facial_json(const FacialSet& f, json cells, json co_facial) {
    return {{"facial_set", std::move(cells)},
            {"co_facial", std::move(co_facial)},
            {"certificate", rational_array(f.certificate)},
            {"certified", f.certified}};
}

json matrix_json(const std::vector<double>& by_pair, int n) {
    json m = json::array();
    for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int j = 0; j < n; ++j) {
            if (i == j) row.push_back(nullptr);
            else {
                const double p = by_pair[static_cast<std::size_t>(pair_index(std::min(i, j), std::max(i, j), n))];
                row.push_back(i < j ? p : 1 - p);
            }
        }
        m.push_back(row);
    }
    return m;
}

// Beta model: exists flag, co-facial cells and an exact certificate from the Cayley cone.
json check_beta(const EdgeCountTable& t, const Options& o, ExitStatus& st) {
    const int n = t.n();
    const auto C = cayley_design(n, true);
    const auto x = t.lifted();
    const auto f = facial_set_of_table(x, C, o.lp_mode());
    json out{{"model", "beta"}, {"n", n}, {"exists", !f.is_proper}};
    out["co_facial"] = lifted_cells(f.co_facial, n);
    out["certificate"] = rational_array(f.certificate);
    bool constant = true;
    for (auto [i, j] : pair_list(n)) constant = constant && t.trials(i, j) == t.trials(0, 1);
    if (constant && n <= kExhaustiveCap) {
        json tight = json::array();
        for (const auto& ineq : mp_boundary_check(degree_stats(t), n).tight) tight.push_back(ineq.describe());
        out["tight_inequalities"] = tight;
    }
    if (f.is_proper) st.code = 1;
    return out;
}

json cmd_check(const Options& o, ExitStatus& st) {
    switch (o.parsed_model()) {
        case Model::beta: return check_beta(read_edge_table(o), o, st);
        case Model::bt: {
            const auto t = read_directed_table(o);
            const auto v = bt_existence(t);
            if (!v.exists) st.code = 1;
            json never = json::array();
            for (int i : v.never_loses) never.push_back(std::to_string(i + 1));
            return {{"model", "bt"}, {"exists", v.exists}, {"never_loses", never}};
        }
        case Model::poisson: {
            const auto t = read_directed_table(o);
            const auto C = poisson_design(t.n());
            const auto f = facial_set_of_table(t.counts_lifted(), C, o.lp_mode());
            if (f.is_proper) st.code = 1;
            json out{{"model", "poisson"}, {"exists", !f.is_proper}};
            out["co_facial"] = lifted_cells(f.co_facial, t.n());
            out["certificate"] = rational_array(f.certificate);
            return out;
        }
        case Model::rasch: {
            const auto v = rasch_existence(read_rasch_table(o));
            if (!v.exists) st.code = 1;
            json out{{"model", "rasch"}, {"exists", v.exists}};
            if (v.blocking) {
                auto one = [](const std::vector<int>& s) {
                    json a = json::array();
                    for (int i : s) a.push_back(i + 1);
                    return a;
                };
                out["blocking"] = {{"A", one(v.blocking->A)}, {"B", one(v.blocking->B)}, {"C", one(v.blocking->C)},
                                   {"D", one(v.blocking->D)}};
            }
            return out;
        }
        default: {
            const auto t = read_dyad_table(o);
            const auto v = p1_existence(t, p1_variant(o.parsed_model()));
            if (!v.exists) st.code = 1;
            return {{"model", o.model}, {"exists", v.exists}, {"co_facial", dyad_cells(v.facial_set.co_facial, t.n())}};
        }
    }
}

json fit_json(const FitResult& r, int n) {
    json out{{"exists", r.exists}, {"loglik", r.loglik}, {"iterations", r.iterations}, {"moment_residual", r.moment_residual}};
    if (r.beta_hat) out["beta_hat"] = *r.beta_hat;
    out["p_hat"] = matrix_json(r.p_hat, n);
    if (r.facial_set) out["co_facial"] = lifted_cells(r.facial_set->co_facial, n);
    return out;
}

json cmd_fit(const Options& o, ExitStatus& st) {
    FitOptions fo;
    switch (o.parsed_model()) {
        case Model::beta: {
            const auto t = read_edge_table(o);
            try {
                auto out = fit_json(o.extended ? extended_mle(t, fo) : fit_mle(t, fo), t.n());
                if (!out["exists"].get<bool>()) st.code = 1;
                return out;
            } catch (const NonexistentMLE& e) {
                st.code = 1;
                return {{"exists", false}, {"message", e.what()}};
            }
        }
        case Model::bt: {
            const auto t = read_directed_table(o);
            try {
                return fit_json(fit_bradley_terry(t, fo), t.n());
            } catch (const NonexistentMLE& e) {
                st.code = 1;
                return {{"exists", false}, {"message", e.what()}};
            }
        }
        default:
            if (is_p1(o.parsed_model())) {
                const auto t = read_dyad_table(o);
                const auto v = p1_variant(o.parsed_model());
                const auto verdict = p1_existence(t, v);
                if (!verdict.exists) st.code = 1;
                json dyads = json::array();
                const auto probs = p1_fit(t, v);
                const auto pairs = pair_list(t.n());
                for (std::size_t p = 0; p < probs.size(); ++p)
                    dyads.push_back({{"dyad", node_pair(pairs[p].first, pairs[p].second)}, {"probabilities", probs[p]}});
                return {{"model", o.model}, {"exists", verdict.exists}, {"dyads", dyads}};
            }
            throw ParameterError("fit is available for beta, bt and p1 models");
    }
}

json cmd_facial_set(const Options& o, ExitStatus& st) {
    const auto m = o.parsed_model();
    if (m == Model::beta) {
        const auto t = read_edge_table(o);
        const auto C = cayley_design(t.n(), true);
        const auto f = facial_set_of_table(t.lifted(), C, o.lp_mode());
        if (f.is_proper) st.code = 1;
        return facial_json(f, lifted_cells(f.cells, t.n()), lifted_cells(f.co_facial, t.n()));
    }
    if (m == Model::poisson || m == Model::bt) {
        const auto t = read_directed_table(o);
        const auto C = m == Model::poisson ? poisson_design(t.n()) : bt_design(t.n());
        const auto f = facial_set_of_table(t.counts_lifted(), C, o.lp_mode());
        if (f.is_proper) st.code = 1;
        return facial_json(f, lifted_cells(f.cells, t.n()), lifted_cells(f.co_facial, t.n()));
    }
    if (is_p1(m)) {
        const auto t = read_dyad_table(o);
        const auto f = p1_existence(t, p1_variant(m)).facial_set;
        if (f.is_proper) st.code = 1;
        return facial_json(f, dyad_cells(f.cells, t.n()), dyad_cells(f.co_facial, t.n()));
    }
    throw ParameterError("facial-set is not available for the rasch model; use check");
}

DesignMatrix model_design(const Options& o) {
    switch (o.parsed_model()) {
        case Model::beta: return cayley_design(o.n, true);
        case Model::bt: return bt_design(o.n);
        case Model::poisson: return poisson_design(o.n);
        case Model::rasch: return rasch_design(o.k, o.l);
        default: return p1_design(o.n, p1_variant(o.parsed_model()));
    }
}

// Columns sharing one multinomial draw; empty for Poisson.
std::vector<std::vector<int>> model_blocks(const Options& o) {
    switch (o.parsed_model()) {
        case Model::beta:
        case Model::bt: return sampling_blocks(pair_count(o.n), 2);
        case Model::poisson: return {};
        case Model::rasch: return sampling_blocks(o.k * o.l, 2);
        default: return sampling_blocks(pair_count(o.n), 4);
    }
}

json cmd_design(const Options& o, ExitStatus&) {
    const auto d = model_design(o);
    if (o.pretty) {
        std::cout << d.to_csv();
        return nullptr;
    }
    json entries = json::array();
    for (int r = 0; r < d.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < d.cols(); ++c) row.push_back(d.entries(r, c));
        entries.push_back(row);
    }
    return {{"model", o.model}, {"rows", d.rows()}, {"cols", d.cols()}, {"rank", d.rank()},
            {"row_labels", d.row_labels}, {"col_labels", d.col_labels}, {"entries", entries}};
}

json cmd_enumerate(const Options& o, ExitStatus&) {
    if (o.facets == o.vertices) throw CLI::ValidationError("enumerate", "give exactly one of --facets or --vertices");
    const auto d = model_design(o);
    const auto blocks = model_blocks(o);
    if (o.facets) {
        const auto cone = enumerate_facets(d.entries);
        const auto kinds = blocks.empty() ? std::vector<int>(cone.facets.size(), -1) : classify_sampling_facets(cone, blocks);
        const auto sampling = std::count_if(kinds.begin(), kinds.end(), [](int k) { return k >= 0; });
        return {{"model", o.model},
                {"dim", cone.dim},
                {"facet_count", cone.facets.size()},
                {"sampling_facets", sampling},
                {"model_facets", static_cast<std::int64_t>(cone.facets.size()) - sampling}};
    }
    // vertices of the convex support: the model polytope as a Minkowski sum over sampling blocks
    if (blocks.empty()) throw ParameterError("vertex enumeration needs a model with sampling blocks");
    std::vector<int> keep;
    for (int r = 0; r < d.rows(); ++r) keep.push_back(r);
    DesignMatrix body = d;
    if (o.parsed_model() == Model::beta) {
        // drop the sampling rows; what is left is the degree map of the lifted table
        keep.erase(keep.begin(), keep.begin() + pair_count(o.n));
        body = DesignMatrix{d.entries.rows_subset(keep), {}, d.col_labels};
    }
    const auto poly = enumerate_vertices_minkowski(body, blocks);
    return {{"model", o.model}, {"vertex_count", poly.generators.size()}, {"dim", poly.dim}, {"vertices", poly.generators}};
}

json cmd_survey(const Options& o, ExitStatus&) {
    if (!is_p1(o.parsed_model())) throw ParameterError("survey runs over p1 models only");
    const unsigned threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
    const auto s = p1_survey(o.n, p1_variant(o.parsed_model()), static_cast<int>(threads));
    return {{"model", o.model},
            {"n", s.n},
            {"networks", s.networks},
            {"distinct_statistics", s.distinct_statistics},
            {"existing_statistics", s.existing_statistics},
            {"existing_networks", s.existing_networks}};
}

BetaParams beta_params(const Options& o) {
    if (o.beta.empty()) return BetaParams(std::vector<double>(static_cast<std::size_t>(o.n), 0.0));
    if (o.beta.size() == 1) return BetaParams(std::vector<double>(static_cast<std::size_t>(o.n), o.beta[0]));
    return BetaParams(o.beta);
}

json cmd_simulate(const Options& o, ExitStatus&) {
    if (o.parsed_model() != Model::beta) throw ParameterError("simulate supports the beta model only");
    const auto params = beta_params(o);
    const int N = o.trials.value_or(1);
    const unsigned threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
    const auto r = mc_existence_probability(params, N, o.reps, o.seed, o.c, threads);
    json out{{"n", r.n},
             {"N", r.N},
             {"replicates", r.replicates},
             {"empirical_exist_rate", r.empirical_exist_rate},
             {"nonexistence_rate", r.nonexistence_rate},
             {"std_error", r.std_error}};
    if (r.existence_floor) out["existence_floor"] = *r.existence_floor;
    if (r.large_sides_floor) out["large_sides_floor"] = *r.large_sides_floor;
    if (o.c && o.C) {
        // d_bar is the expectation of the normalized statistic, so one trial per pair
        const auto a = check_sufficient_conditions(expected_degrees(params), N, *o.c, *o.C);
        out["conditions"] = {{"condition_i", a.condition_i},   {"margin_i", a.margin_i},
                             {"condition_ii", a.condition_ii}, {"margin_ii", a.margin_ii},
                             {"gate", a.gate},                 {"checked_pairs", a.checked_pairs}};
    }
    if (!o.csv_out.empty()) {
        std::ofstream csv(o.csv_out);
        if (!csv) throw ParseError("cannot write " + o.csv_out);
        csv << "replicate,exists\n";
        for (std::size_t i = 0; i < r.verdicts.size(); ++i) csv << i << ',' << (r.verdicts[i] ? 1 : 0) << '\n';
    }
    return out;
}

json cmd_generate(const Options& o, ExitStatus&) {
    if (o.parsed_model() != Model::beta) throw ParameterError("generate supports the beta model only");
    std::cout << to_csv(generate_graph(beta_params(o), o.trials.value_or(1), o.seed));
    return nullptr;
}

void print_pretty(const json& j, std::ostream& out) {
    if (!j.is_object()) {
        out << j.dump(2) << '\n';
        return;
    }
    for (const auto& [key, value] : j.items()) {
        out << std::left << std::setw(22) << key;
        if (value.is_array() && !value.empty() && value.front().is_array()) {
            out << '\n';
            for (const auto& row : value) out << "  " << row.dump() << '\n';
        } else {
            out << value.dump() << '\n';
        }
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Existence and estimation for degree-based random graph models"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--model", o.model, "beta, bt, poisson, rasch, p1-zero, p1-const, p1-edge")
            ->check(CLI::IsMember([] {
                std::vector<std::string> names;
                for (const auto& [name, m] : kModels) names.push_back(name);
                return names;
            }()));
        sub->add_flag("--pretty", o.pretty, "human-readable output");
    };
    auto input = [&](CLI::App* sub) {
        sub->add_option("input", o.input, "table file (.csv or .json)")->required()->check(CLI::ExistingFile);
        sub->add_option("--trials", o.trials, "trials per pair when the file does not give them")->check(CLI::PositiveNumber);
        sub->add_flag("--float{true},--exact{false}", o.floating, "LP arithmetic (default exact)");
    };
    auto size = [&](CLI::App* sub) {
        sub->add_option("--n", o.n, "number of nodes")->check(CLI::Range(2, 64));
        sub->add_option("--k", o.k, "Rasch subjects")->check(CLI::Range(1, 64));
        sub->add_option("--l", o.l, "Rasch items")->check(CLI::Range(1, 64));
    };

    auto* check = app.add_subcommand("check", "decide whether the MLE exists");
    auto* fit = app.add_subcommand("fit", "maximum likelihood fit");
    auto* facial = app.add_subcommand("facial-set", "facial set of the observed table");
    auto* design = app.add_subcommand("design", "print a design matrix");
    auto* enumerate = app.add_subcommand("enumerate", "facets or vertices of the marginal cone");
    auto* survey = app.add_subcommand("survey", "exhaustive p1 existence survey");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo existence frequency");
    auto* generate = app.add_subcommand("generate", "sample a table from the beta model");

    for (auto* sub : {check, fit, facial}) {
        common(sub);
        input(sub);
    }
    fit->add_flag("--extended", o.extended, "extended MLE on the facial set");
    for (auto* sub : {design, enumerate, survey, simulate, generate}) {
        common(sub);
        size(sub);
    }
    enumerate->add_flag("--facets", o.facets, "facets of the reduced cone");
    enumerate->add_flag("--vertices", o.vertices, "vertices of the convex support");
    for (auto* sub : {survey, simulate}) sub->add_option("--threads", o.threads, "worker threads (default: all cores)");
    for (auto* sub : {simulate, generate}) {
        sub->add_option("--beta", o.beta, "node parameters (one value broadcasts)")->delimiter(',');
        sub->add_option("--trials,--N", o.trials, "trials per pair")->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "random seed");
    }
    simulate->add_option("--reps", o.reps, "replicates")->check(CLI::Range(1, 100000000));
    simulate->add_option("--c", o.c, "rate constant for the bounds");
    simulate->add_option("--C", o.C, "offset constant for the sufficient conditions");
    simulate->add_option("--csv", o.csv_out, "write per-replicate verdicts here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (!o.beta.empty() && o.beta.size() > 1) o.n = static_cast<int>(o.beta.size());

    ExitStatus st;
    json out;
    try {
        if (*check) out = cmd_check(o, st);
        else if (*fit) out = cmd_fit(o, st);
        else if (*facial) out = cmd_facial_set(o, st);
        else if (*design) out = cmd_design(o, st);
        else if (*enumerate) out = cmd_enumerate(o, st);
        else if (*survey) out = cmd_survey(o, st);
        else if (*simulate) out = cmd_simulate(o, st);
        else if (*generate) out = cmd_generate(o, st);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const ConsistencyError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const SizeError& e) {
        std::cerr << "size error: " << e.what() << '\n';
        return 3;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    }
    if (!out.is_null()) {
        if (o.pretty) print_pretty(out, std::cout);
        else std::cout << out.dump() << '\n';
    }
    return st.code;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
