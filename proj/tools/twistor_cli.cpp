// Command-line surface over the discrete twistor library. Exit codes:
// 0 success/verified, 1 verification failed (or no object found where one
// was asked for), 2 usage/format error, 3 search budget exhausted.

#include <twistor/twistor.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace twistor;
using io::JVal;

struct Options {
    std::string command;
    std::string mode;
    double tol = 1e-9;
    bool exact = false;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int restarts = 200;
    int max_iters = 500;
    int steps = 1;
    int colors = 0;  // 0 = max degree
    int cap = 64;
    std::uint64_t sign_budget = 0;  // 0 = no explicit cap
    std::string format = "json";
    std::string input = "-";
    std::string output = "-";
    std::string form_path;
    std::string psi_path;
    std::string config_path;
    std::string family;
    double lambda0 = 1e-3;
    double dedup_tol = 1e-6;
    bool nondegeneracy = true;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerificationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << text;
}

JVal config_echo(const Options& opt) {
    JVal c = JVal::object();
    c.add("command", JVal::str(opt.command));
    c.add("mode", opt.mode.empty() ? JVal() : JVal::str(opt.mode));
    c.add("tol", JVal::real(opt.tol));
    c.add("exact", JVal::boolean(opt.exact));
    c.add("seed", JVal::integer(static_cast<long long>(opt.seed)));
    c.add("restarts", JVal::integer(opt.restarts));
    c.add("max_iters", JVal::integer(opt.max_iters));
    c.add("steps", JVal::integer(opt.steps));
    c.add("colors", JVal::integer(opt.colors));
    c.add("cap", JVal::integer(opt.cap));
    c.add("sign_budget", JVal::integer(static_cast<long long>(opt.sign_budget)));
    c.add("format", JVal::str(opt.format));
    if (opt.command == "solve") {
        c.add("lambda0", JVal::real(opt.lambda0));
        c.add("dedup_tol", JVal::real(opt.dedup_tol));
        c.add("nondegeneracy", JVal::boolean(opt.nondegeneracy));
    }
    return c;
}

std::string config_comment(const Options& opt) {
    std::string s = config_echo(opt).dump();
    s.pop_back();  // trailing newline
    return s;
}

// FAMILY or FAMILY(a,b,...) with , or x separating integer parameters
std::pair<std::string, std::vector<int>> parse_family(const std::string& text) {
    std::size_t open = text.find('(');
    if (open == std::string::npos) return {text, {}};
    if (text.back() != ')') throw UsageError("bad family syntax: " + text);
    std::string name = text.substr(0, open);
    std::string args = text.substr(open + 1, text.size() - open - 2);
    std::vector<int> params;
    std::string cur;
    auto flush = [&]() {
        if (cur.empty()) throw UsageError("bad family parameters: " + text);
        try {
            params.push_back(std::stoi(cur));
        } catch (const std::exception&) {
            throw UsageError("bad family parameter \"" + cur + "\"");
        }
        cur.clear();
    };
    for (char ch : args) {
        if (ch == ',' || ch == 'x')
            flush();
        else
            cur.push_back(ch);
    }
    if (!args.empty()) flush();
    return {name, params};
}

EdgeColoring require_coloring(const Graph& g, const std::optional<EdgeColoring>& given,
                              int colors) {
    if (given) return *given;
    int m = colors;
    if (m == 0)
        for (int x = 0; x < g.n(); ++x) m = std::max(m, g.degree(x));
    auto col = proper_edge_coloring(g, m);
    if (!col) throw VerificationFailed("no proper edge coloring with " + std::to_string(m) +
                                       " colors");
    return *col;
}

template <class C>
JVal residuals_report(const Graph& g, const VertexFunction<C>& res, bool pass) {
    JVal doc = JVal::object();
    doc.add("pass", JVal::boolean(pass));
    int worst = 0;
    for (int x = 1; x < g.n(); ++x)
        if (scalar_abs(res[x]) > scalar_abs(res[worst])) worst = x;
    if (g.n() > 0) {
        JVal w = JVal::object();
        w.add("vertex", JVal::str(g.label(worst)));
        w.add("abs", JVal::real(scalar_abs(res[worst])));
        doc.add("worst", std::move(w));
    }
    doc.add("residuals", io::values_object(g, res));
    return doc;
}

int emit_and_flag(const Options& opt, JVal body, bool pass) {
    JVal doc = JVal::object();
    doc.add("config", config_echo(opt));
    for (auto& [k, v] : body.obj) doc.add(k, std::move(v));
    write_output(opt.output, doc.dump());
    return pass ? 0 : 1;
}

// --- verbs -------------------------------------------------------------

int run_generate(const Options& opt) {
    auto [name, params] = parse_family(opt.family);
    Generated gen;
    try {
        gen = generate(name, params);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (opt.exact && gen.values && !gen.exact_values)
        throw ModeConflict("family \"" + name + "\" carries non-exact values");
    if (opt.format == "dot") {
        const EdgeColoring* col = gen.coloring ? &*gen.coloring : nullptr;
        std::string dot;
        if (gen.exact_values && opt.exact)
            dot = io::dot_document(gen.graph, col, &*gen.exact_values, config_comment(opt));
        else if (gen.values)
            dot = io::dot_document(gen.graph, col, &*gen.values, config_comment(opt));
        else
            dot = io::dot_document<Complex>(gen.graph, col, nullptr, config_comment(opt));
        write_output(opt.output, dot);
        return 0;
    }
    JVal doc = JVal::object();
    doc.add("config", config_echo(opt));
    JVal gdoc = io::graph_document(gen.graph, gen.coloring ? &*gen.coloring : nullptr);
    for (auto& [k, v] : gdoc.obj) doc.add(k, std::move(v));
    if (opt.exact && gen.exact_values)
        doc.add("values", io::values_object(gen.graph, *gen.exact_values));
    else if (gen.values)
        doc.add("values", io::values_object(gen.graph, *gen.values));
    write_output(opt.output, doc.dump());
    return 0;
}

int run_verify(const Options& opt) {
    if (opt.mode.empty()) throw UsageError("verify needs --mode");
    io::GraphDocument doc = io::parse_graph_document(read_input(opt.input));
    const Graph& g = doc.graph;

    if (opt.mode == "holomorphic") {
        if (!doc.values) throw FormatError("graph document carries no values");
        JVal body;
        bool pass;
        if (opt.exact) {
            auto phi = doc.values_exact();
            auto res = holomorphy_residuals(g, phi);
            pass = is_holomorphic(g, phi).holomorphic;
            body = residuals_report(g, res, pass);
        } else {
            auto phi = doc.values_floating();
            auto res = holomorphy_residuals(g, phi);
            pass = is_holomorphic(g, phi, opt.tol).holomorphic;
            body = residuals_report(g, res, pass);
        }
        return emit_and_flag(opt, std::move(body), pass);
    }

    if (opt.mode == "isotropic" || opt.mode == "integrable") {
        if (opt.form_path.empty()) throw UsageError("--mode " + opt.mode + " needs --form");
        std::vector<bool> flipped;
        auto entries = io::parse_form_entries(read_input(opt.form_path), g, flipped);
        if (opt.mode == "isotropic") {
            JVal body;
            bool pass = true;
            if (opt.exact) {
                auto w = io::form_from_entries<GaussianRational>(g, entries, flipped);
                auto res = isotropy_residuals(g, w);
                for (int x = 0; x < g.n(); ++x) pass = pass && scalar_is_zero(res[x]);
                body = residuals_report(g, res, pass);
            } else {
                auto w = io::form_from_entries<Complex>(g, entries, flipped);
                auto res = isotropy_residuals(g, w);
                for (int x = 0; x < g.n(); ++x) pass = pass && std::abs(res[x]) < opt.tol;
                body = residuals_report(g, res, pass);
            }
            return emit_and_flag(opt, std::move(body), pass);
        }
        // integrable: all fundamental cycle sums vanish
        JVal body = JVal::object();
        bool pass;
        JVal sums = JVal::array();
        if (opt.exact) {
            auto w = io::form_from_entries<GaussianRational>(g, entries, flipped);
            auto r = integrate(g, w, g.label(0), GaussianRational{});
            pass = r.function.has_value();
            for (const auto& s : r.cycle_sums) sums.push(io::complex_value(s));
            body.add("pass", JVal::boolean(pass));
            body.add("worst_abs", JVal::real(r.worst_abs));
            body.add("cycle_sums", std::move(sums));
            if (pass) body.add("function", io::values_object(g, *r.function));
        } else {
            auto w = io::form_from_entries<Complex>(g, entries, flipped);
            auto r = integrate(g, w, g.label(0), Complex{}, opt.tol);
            pass = r.function.has_value();
            for (const auto& s : r.cycle_sums) sums.push(io::complex_value(s));
            body.add("pass", JVal::boolean(pass));
            body.add("worst_abs", JVal::real(r.worst_abs));
            body.add("cycle_sums", std::move(sums));
            if (pass) body.add("function", io::values_object(g, *r.function));
        }
        return emit_and_flag(opt, std::move(body), pass);
    }

    if (opt.mode == "clique") {
        if (opt.psi_path.empty()) throw UsageError("--mode clique needs --psi");
        auto [line, corr] = line_graph(g);
        auto entries = io::parse_psi_entries(read_input(opt.psi_path), line);
        JVal body = JVal::object();
        bool pass;
        JVal res = JVal::object();
        if (opt.exact) {
            auto psi = io::psi_from_entries<GaussianRational>(line, entries);
            auto rep = verify_clique_condition(line, psi, corr);
            pass = rep.pass;
            for (const auto& [label, val] : rep.residuals) res.add(label, io::complex_value(val));
            body.add("pass", JVal::boolean(pass));
            body.add("worst", JVal::str(rep.worst_vertex));
            body.add("residuals", std::move(res));
        } else {
            auto psi = io::psi_from_entries<Complex>(line, entries);
            auto rep = verify_clique_condition(line, psi, corr, opt.tol);
            pass = rep.pass;
            for (const auto& [label, val] : rep.residuals) res.add(label, io::complex_value(val));
            body.add("pass", JVal::boolean(pass));
            body.add("worst", JVal::str(rep.worst_vertex));
            body.add("residuals", std::move(res));
        }
        return emit_and_flag(opt, std::move(body), pass);
    }

    throw UsageError("unknown verify mode \"" + opt.mode + "\"");
}

SolveConfig solver_config(const Options& opt) {
    SolveConfig cfg;
    cfg.seed = opt.seed;
    cfg.restarts = opt.restarts;
    cfg.max_iters = opt.max_iters;
    cfg.target = opt.tol;
    cfg.lambda0 = opt.lambda0;
    cfg.dedup_tol = opt.dedup_tol;
    cfg.nondegeneracy = opt.nondegeneracy;
    return cfg;
}

int run_solve(const Options& opt) {
    if (opt.exact) throw UsageError("the solver is floating-point only; drop --exact");
    if (opt.mode != "holomorphic" && opt.mode != "isotropic")
        throw UsageError("solve needs --mode holomorphic or --mode isotropic");
    io::GraphDocument doc = io::parse_graph_document(read_input(opt.input));
    const Graph& g = doc.graph;
    SolveConfig cfg = solver_config(opt);

    JVal body = JVal::object();
    JVal sols = JVal::array();
    JVal stats = JVal::array();
    bool found;
    double wall;
    auto push_status = [&](const RestartStatus& st) {
        JVal s = JVal::object();
        s.add("restart", JVal::integer(st.index));
        s.add("status", JVal::str(st.status));
        s.add("residual", JVal::real(st.residual));
        s.add("class", JVal::integer(st.solution_class));
        s.add("iterations", JVal::integer(st.iterations));
        stats.push(std::move(s));
    };
    if (opt.mode == "holomorphic") {
        auto rep = solve_holomorphic(g, cfg);
        found = rep.found();
        wall = rep.wall_seconds;
        for (std::size_t s = 0; s < rep.solutions.size(); ++s) {
            JVal one = JVal::object();
            one.add("values", io::values_object(g, rep.solutions[s]));
            one.add("residual", JVal::real(rep.residuals[s]));
            sols.push(std::move(one));
        }
        for (const auto& st : rep.statuses) push_status(st);
    } else {
        auto rep = solve_isotropic(g, cfg);
        found = rep.found();
        wall = rep.wall_seconds;
        for (std::size_t s = 0; s < rep.solutions.size(); ++s) {
            JVal one = JVal::object();
            one.add("form", io::form_object(g, rep.solutions[s]));
            one.add("residual", JVal::real(rep.residuals[s]));
            sols.push(std::move(one));
        }
        for (const auto& st : rep.statuses) push_status(st);
    }
    body.add("found", JVal::boolean(found));
    if (!found) body.add("outcome", JVal::str("none found within budget"));
    body.add("solutions", std::move(sols));
    body.add("statuses", std::move(stats));
    // wall-clock goes to stderr so identical runs stay byte-identical
    std::cerr << "wall_seconds " << wall << "\n";
    JVal doc_out = JVal::object();
    doc_out.add("config", config_echo(opt));
    for (auto& [k, v] : body.obj) doc_out.add(k, std::move(v));
    write_output(opt.output, doc_out.dump());
    if (!found) throw BudgetExhausted("none found within budget");
    return 0;
}

int run_linegraph(const Options& opt) {
    io::GraphDocument doc = io::parse_graph_document(read_input(opt.input));
    auto [line, corr] = line_graph(doc.graph);
    JVal out = JVal::object();
    out.add("config", config_echo(opt));
    if (opt.format == "dot") {
        write_output(opt.output, io::dot_document<Complex>(line, nullptr, nullptr, config_comment(opt)));
        return 0;
    }
    JVal gdoc = io::graph_document(line, nullptr);
    for (auto& [k, v] : gdoc.obj) out.add(k, std::move(v));
    JVal cl = JVal::object();
    for (const auto& [root_label, members] : corr.clique_of) {
        JVal arr = JVal::array();
        for (const auto& m : members) arr.push(JVal::str(m));
        cl.add(root_label, std::move(arr));
    }
    out.add("cliques", std::move(cl));
    write_output(opt.output, out.dump());
    return 0;
}

int run_rootgraph(const Options& opt) {
    io::GraphDocument doc = io::parse_graph_document(read_input(opt.input));
    std::optional<RootGraphResult> root;
    try {
        root = recognize_line_graph(doc.graph, opt.cap);
    } catch (const std::length_error& e) {
        throw BudgetExhausted(e.what());
    }
    JVal out = JVal::object();
    out.add("config", config_echo(opt));
    out.add("is_line_graph", JVal::boolean(root.has_value()));
    if (!root) {
        write_output(opt.output, out.dump());
        return 1;
    }
    JVal gdoc = io::graph_document(root->root, nullptr);
    for (auto& [k, v] : gdoc.obj) out.add(k, std::move(v));
    JVal e2v = JVal::object();
    for (int e = 0; e < root->root.m(); ++e)
        e2v.add(root->root.edges()[e].name(), JVal::str(root->corr.edge_to_vertex[e]));
    out.add("edge_to_vertex", std::move(e2v));
    write_output(opt.output, out.dump());
    return 0;
}

int run_dual(const Options& opt) {
    if (opt.form_path.empty() == opt.psi_path.empty())
        throw UsageError("dual needs exactly one of --form (root form -> psi) or --psi (psi -> root form)");
    io::GraphDocument doc = io::parse_graph_document(read_input(opt.input));
    const Graph& g = doc.graph;  // the root graph in both directions
    auto [line, corr] = line_graph(g);
    JVal out = JVal::object();
    out.add("config", config_echo(opt));
    if (!opt.form_path.empty()) {
        std::vector<bool> flipped;
        auto entries = io::parse_form_entries(read_input(opt.form_path), g, flipped);
        if (opt.exact) {
            auto w = io::form_from_entries<GaussianRational>(g, entries, flipped);
            auto psi = dual_function(g, w, line, corr);
            out.add("psi", io::psi_object(line, psi));
        } else {
            auto w = io::form_from_entries<Complex>(g, entries, flipped);
            auto psi = dual_function(g, w, line, corr);
            out.add("psi", io::psi_object(line, psi));
        }
        write_output(opt.output, out.dump());
        return 0;
    }
    auto entries = io::parse_psi_entries(read_input(opt.psi_path), line);
    try {
        if (opt.exact) {
            auto psi = io::psi_from_entries<GaussianRational>(line, entries);
            auto w = pull_back_dual(line, psi, g, corr);
            out.add("form", io::form_object(g, w));
        } else {
            auto psi = io::psi_from_entries<Complex>(line, entries);
            auto w = pull_back_dual(line, psi, g, corr, opt.tol);
            out.add("form", io::form_object(g, w));
        }
    } catch (const std::domain_error& e) {
        throw VerificationFailed(e.what());
    }
    write_output(opt.output, out.dump());
    return 0;
}

int run_spinor(const Options& opt) {
    if (opt.exact) throw UsageError("spinor extraction is floating-point only; drop --exact");
    if (opt.form_path.empty()) throw UsageError("spinor needs --form");
    io::GraphDocument doc = io::parse_graph_document(read_input(opt.input));
    const Graph& g = doc.graph;
    EdgeColoring col = require_coloring(g, doc.coloring, 3);
    std::vector<bool> flipped;
    auto entries = io::parse_form_entries(read_input(opt.form_path), g, flipped);
    auto w = io::form_from_entries<Complex>(g, entries, flipped);
    auto res = isotropy_residuals(g, w);
    for (int x = 0; x < g.n(); ++x)
        if (std::abs(res[x]) >= opt.tol)
            throw VerificationFailed("form is not isotropic at " + g.label(x));
    XiField<Complex> xi;
    try {
        xi = xi_field(g, w, col);
    } catch (const std::invalid_argument& e) {
        throw VerificationFailed(e.what());
    }
    JVal out = JVal::object();
    out.add("config", config_echo(opt));
    JVal jxi = JVal::object(), jmu = JVal::object(), ju = JVal::object();
    for (int x = 0; x < g.n(); ++x) {
        JVal triple = JVal::array();
        for (int k = 0; k < 3; ++k) triple.push(io::complex_value(xi.xi[x][k]));
        jxi.add(g.label(x), std::move(triple));
        bool zero = xi.xi[x][0] == Complex(0) && xi.xi[x][1] == Complex(0) &&
                    xi.xi[x][2] == Complex(0);
        if (zero) {
            jmu.add(g.label(x), JVal());
            ju.add(g.label(x), JVal());
        } else {
            auto mu = spinor_from_xi(xi.xi[x]);
            JVal pair = JVal::array();
            pair.push(io::complex_value(mu[0]));
            pair.push(io::complex_value(mu[1]));
            jmu.add(g.label(x), std::move(pair));
            auto U = u_field(xi.xi[x]);
            JVal uv = JVal::array();
            for (double c : U) uv.push(JVal::real(c));
            ju.add(g.label(x), std::move(uv));
        }
    }
    out.add("xi", std::move(jxi));
    out.add("mu", std::move(jmu));
    out.add("u", std::move(ju));
    write_output(opt.output, out.dump());
    return 0;
}

int run_evolve(const Options& opt) {
    if (opt.exact) throw UsageError("evolution is floating-point only; drop --exact");
    io::GraphDocument doc = io::parse_graph_document(read_input(opt.input));
    const Graph& g = doc.graph;
    if (!doc.values) throw FormatError("graph document carries no values");
    EdgeColoring col = require_coloring(g, doc.coloring, 3);
    VertexFunction<Complex> phi = doc.values_floating();

    JVal out = JVal::object();
    out.add("config", config_echo(opt));
    JVal steps = JVal::array();
    bool budget_hit = false, inconsistent = false;
    for (int step = 1; step <= opt.steps; ++step) {
        OneForm<Complex> w = differential(g, phi);
        auto iso = isotropy_residuals(g, w);
        for (int x = 0; x < g.n(); ++x)
            if (std::abs(iso[x]) >= opt.tol)
                throw VerificationFailed("step " + std::to_string(step) + ": function is not holomorphic at " +
                                         g.label(x));
        XiField<Complex> xi = xi_field(g, w, col);
        std::vector<std::array<double, 3>> U(g.n());
        for (int x = 0; x < g.n(); ++x) {
            bool zero = xi.xi[x][0] == Complex(0) && xi.xi[x][1] == Complex(0) &&
                        xi.xi[x][2] == Complex(0);
            if (zero)
                throw VerificationFailed("step " + std::to_string(step) +
                                         ": direction undefined at " + g.label(x));
            U[x] = u_field(xi.xi[x]);
        }
        auto ss = sign_search(g, phi, U, col, opt.tol, opt.seed, opt.sign_budget);
        JVal entry = JVal::object();
        entry.add("step", JVal::integer(step));
        JVal eps = JVal::object();
        for (int x = 0; x < g.n(); ++x) eps.add(g.label(x), JVal::integer(ss.eps[x]));
        entry.add("eps", std::move(eps));
        if (ss.budget_exhausted) {
            entry.add("budget_exhausted", JVal::boolean(true));
            steps.push(std::move(entry));
            budget_hit = true;
            break;
        }
        auto ev = evolve_step(g, phi, U, ss.eps, col);
        entry.add("residual", JVal::real(ev.linear_residual));
        entry.add("consistent", JVal::boolean(ev.consistent));
        entry.add("values", io::values_object(g, ev.next));
        steps.push(std::move(entry));
        if (!ev.consistent) {
            inconsistent = true;
            break;
        }
        phi = ev.next;
    }
    out.add("steps", std::move(steps));
    write_output(opt.output, out.dump());
    if (budget_hit) throw BudgetExhausted("sign search budget exhausted");
    return inconsistent ? 1 : 0;
}

int run_color(const Options& opt) {
    io::GraphDocument doc = io::parse_graph_document(read_input(opt.input));
    const Graph& g = doc.graph;
    int m = opt.colors;
    if (m == 0)
        for (int x = 0; x < g.n(); ++x) m = std::max(m, g.degree(x));
    auto col = proper_edge_coloring(g, m);
    JVal out = JVal::object();
    out.add("config", config_echo(opt));
    out.add("colorable", JVal::boolean(col.has_value()));
    if (!col) {
        write_output(opt.output, out.dump());
        return 1;
    }
    JVal gdoc = io::graph_document(g, &*col);
    for (auto& [k, v] : gdoc.obj) out.add(k, std::move(v));
    write_output(opt.output, out.dump());
    return 0;
}

int run_export(const Options& opt) {
    io::GraphDocument doc = io::parse_graph_document(read_input(opt.input));
    const Graph& g = doc.graph;
    const EdgeColoring* col = doc.coloring ? &*doc.coloring : nullptr;
    if (opt.format == "dot") {
        std::string dot;
        if (doc.values && opt.exact) {
            auto f = doc.values_exact();
            dot = io::dot_document(g, col, &f, config_comment(opt));
        } else if (doc.values) {
            auto f = doc.values_floating();
            dot = io::dot_document(g, col, &f, config_comment(opt));
        } else {
            dot = io::dot_document<Complex>(g, col, nullptr, config_comment(opt));
        }
        write_output(opt.output, dot);
        return 0;
    }
    JVal out = JVal::object();
    out.add("config", config_echo(opt));
    JVal gdoc = io::graph_document(g, col);
    for (auto& [k, v] : gdoc.obj) out.add(k, std::move(v));
    if (doc.values) {
        if (opt.exact) {
            auto f = doc.values_exact();
            out.add("values", io::values_object(g, f));
        } else {
            auto f = doc.values_floating();
            out.add("values", io::values_object(g, f));
        }
    }
    write_output(opt.output, out.dump());
    return 0;
}

void apply_config_file(Options& opt, const CLI::App* solve_cmd) {
    if (opt.config_path.empty()) return;
    nlohmann::json j = io::parse_json_text(read_input(opt.config_path));
    if (!j.is_object()) throw FormatError("config file must be a JSON object");
    auto overridden = [&](const std::string& flag) {
        return solve_cmd && solve_cmd->count(flag) > 0;
    };
    for (const auto& [key, val] : j.items()) {
        try {
            if (key == "seed") {
                if (!opt.seed_given) opt.seed = val.get<std::uint64_t>();
            } else if (key == "restarts") {
                if (!overridden("--restarts")) opt.restarts = val.get<int>();
            } else if (key == "max_iters") {
                if (!overridden("--max-iters")) opt.max_iters = val.get<int>();
            } else if (key == "target") {
                if (!overridden("--tol")) opt.tol = val.get<double>();
            } else if (key == "lambda0") {
                opt.lambda0 = val.get<double>();
            } else if (key == "dedup_tol") {
                opt.dedup_tol = val.get<double>();
            } else if (key == "nondegeneracy") {
                opt.nondegeneracy = val.get<bool>();
            } else {
                throw FormatError("config file: unknown key \"" + key + "\"");
            }
        } catch (const nlohmann::json::exception&) {
            throw FormatError("config file: bad value for \"" + key + "\"");
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"discrete twistor theory on finite graphs"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd, bool with_io) {
        cmd->add_option("--tol", opt.tol, "residual tolerance");
        cmd->add_flag("--exact", opt.exact, "exact Gaussian-rational arithmetic");
        cmd->add_option("--seed", opt.seed, "random seed")->each([&](const std::string&) {
            opt.seed_given = true;
        });
        cmd->add_option("--format", opt.format, "json or dot")
            ->check(CLI::IsMember({"json", "dot"}));
        cmd->add_option("-o,--output", opt.output, "output path (- = stdout)");
        if (with_io) cmd->add_option("input", opt.input, "graph document path (- = stdin)");
    };

    CLI::App* c_generate = app.add_subcommand("generate", "emit a builtin graph family");
    c_generate->add_option("family", opt.family, "cube, hypercube(n), cycle(n), complete(n), claw, figure1, dodecahedron, lattice_window(dims)")
        ->required();
    add_common(c_generate, false);

    CLI::App* c_verify = app.add_subcommand("verify", "check holomorphy / isotropy / integrability / clique condition");
    c_verify->add_option("--mode", opt.mode, "holomorphic | isotropic | integrable | clique");
    c_verify->add_option("--form", opt.form_path, "1-form document");
    c_verify->add_option("--psi", opt.psi_path, "dual-function document");
    add_common(c_verify, true);

    CLI::App* c_solve = app.add_subcommand("solve", "search for holomorphic functions / isotropic 1-forms");
    c_solve->add_option("--mode", opt.mode, "holomorphic | isotropic");
    c_solve->add_option("--restarts", opt.restarts, "random restarts");
    c_solve->add_option("--max-iters", opt.max_iters, "iterations per restart");
    c_solve->add_option("--config", opt.config_path, "JSON config file");
    add_common(c_solve, true);

    CLI::App* c_linegraph = app.add_subcommand("linegraph", "line graph of the input");
    add_common(c_linegraph, true);

    CLI::App* c_rootgraph = app.add_subcommand("rootgraph", "recognize a line graph and recover its root");
    c_rootgraph->add_option("--cap", opt.cap, "vertex cap for the recognition search");
    add_common(c_rootgraph, true);

    CLI::App* c_dual = app.add_subcommand("dual", "dual function on the line graph, or pull one back");
    c_dual->add_option("--form", opt.form_path, "1-form document (emit psi)");
    c_dual->add_option("--psi", opt.psi_path, "dual-function document (emit form)");
    add_common(c_dual, true);

    CLI::App* c_spinor = app.add_subcommand("spinor", "xi triples, spinors, unit directions");
    c_spinor->add_option("--form", opt.form_path, "isotropic 1-form document");
    add_common(c_spinor, true);

    CLI::App* c_evolve = app.add_subcommand("evolve", "run the evolution equation");
    c_evolve->add_option("--steps", opt.steps, "number of steps");
    c_evolve->add_option("--sign-budget", opt.sign_budget,
                         "evaluation cap for the sign search (0 = none: full exhaustive scan, "
                         "20000 evaluations in heuristic mode)");
    add_common(c_evolve, true);

    CLI::App* c_color = app.add_subcommand("color", "proper edge coloring");
    c_color->add_option("--colors", opt.colors, "number of colors (default: max degree)");
    add_common(c_color, true);

    CLI::App* c_export = app.add_subcommand("export", "re-emit a document as canonical JSON or DOT");
    add_common(c_export, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (!opt.seed_given) {
        if (const char* env = std::getenv("DT_SEED")) {
            try {
                opt.seed = std::stoull(env);
            } catch (const std::exception&) {
                std::cerr << "error: DT_SEED is not a 64-bit integer\n";
                return 2;
            }
        }
    }

    try {
        apply_config_file(opt, c_solve);
        if (c_generate->parsed()) {
            opt.command = "generate";
            return run_generate(opt);
        }
        if (c_verify->parsed()) {
            opt.command = "verify";
            return run_verify(opt);
        }
        if (c_solve->parsed()) {
            opt.command = "solve";
            return run_solve(opt);
        }
        if (c_linegraph->parsed()) {
            opt.command = "linegraph";
            return run_linegraph(opt);
        }
        if (c_rootgraph->parsed()) {
            opt.command = "rootgraph";
            return run_rootgraph(opt);
        }
        if (c_dual->parsed()) {
            opt.command = "dual";
            return run_dual(opt);
        }
        if (c_spinor->parsed()) {
            opt.command = "spinor";
            return run_spinor(opt);
        }
        if (c_evolve->parsed()) {
            opt.command = "evolve";
            return run_evolve(opt);
        }
        if (c_color->parsed()) {
            opt.command = "color";
            return run_color(opt);
        }
        if (c_export->parsed()) {
            opt.command = "export";
            return run_export(opt);
        }
        std::cerr << "error: no command\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ModeConflict& e) {
        std::cerr << "error: mode conflict: " << e.what() << "\n";
        return 2;
    } catch (const VerificationFailed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const BudgetExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
