#pragma once

#include "twistor/calculus.hpp"
#include "twistor/coloring.hpp"
#include "twistor/graph.hpp"
#include "twistor/scalar.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistor {

// malformed document; CLI maps this to the usage/format exit code
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exact mode requested on input that has no exact representation
struct ModeConflict : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace io {

// --- writing ---------------------------------------------------------------
//
// Emitted JSON must be byte-identical across runs, so the writer is an
// insertion-ordered tree with a fixed float rendering (%.17g) rather than a
// third-party serializer.

struct JVal {
    enum class Kind { Null, Bool, Int, Dbl, Str, Arr, Obj };
    Kind kind = Kind::Null;
    bool b = false;
    long long i = 0;
    double d = 0.0;
    std::string s;
    std::vector<JVal> arr;
    std::vector<std::pair<std::string, JVal>> obj;

    static JVal boolean(bool v) {
        JVal j;
        j.kind = Kind::Bool;
        j.b = v;
        return j;
    }
    static JVal integer(long long v) {
        JVal j;
        j.kind = Kind::Int;
        j.i = v;
        return j;
    }
    static JVal real(double v) {
        if (!std::isfinite(v)) throw std::logic_error("refusing to serialize a non-finite number");
        JVal j;
        j.kind = Kind::Dbl;
        j.d = v;
        return j;
    }
    static JVal str(std::string v) {
        JVal j;
        j.kind = Kind::Str;
        j.s = std::move(v);
        return j;
    }
    static JVal array() {
        JVal j;
        j.kind = Kind::Arr;
        return j;
    }
    static JVal object() {
        JVal j;
        j.kind = Kind::Obj;
        return j;
    }
    JVal& add(std::string key, JVal v) {
        obj.emplace_back(std::move(key), std::move(v));
        return obj.back().second;
    }
    JVal& push(JVal v) {
        arr.push_back(std::move(v));
        return arr.back();
    }
    std::string dump() const {
        std::string out;
        render(out);
        out.push_back('\n');
        return out;
    }

  private:
    static void escape(const std::string& in, std::string& out) {
        out.push_back('"');
        for (char c : in) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        out += buf;
                    } else {
                        out.push_back(c);
                    }
            }
        }
        out.push_back('"');
    }
    void render(std::string& out) const {
        switch (kind) {
            case Kind::Null: out += "null"; break;
            case Kind::Bool: out += b ? "true" : "false"; break;
            case Kind::Int: out += std::to_string(i); break;
            case Kind::Dbl: {
                char buf[40];
                std::snprintf(buf, sizeof(buf), "%.17g", d);
                out += buf;
                break;
            }
            case Kind::Str: escape(s, out); break;
            case Kind::Arr:
                out.push_back('[');
                for (std::size_t k = 0; k < arr.size(); ++k) {
                    if (k) out.push_back(',');
                    arr[k].render(out);
                }
                out.push_back(']');
                break;
            case Kind::Obj:
                out.push_back('{');
                for (std::size_t k = 0; k < obj.size(); ++k) {
                    if (k) out.push_back(',');
                    escape(obj[k].first, out);
                    out.push_back(':');
                    obj[k].second.render(out);
                }
                out.push_back('}');
                break;
        }
    }
};

inline JVal component_value(double v) { return JVal::real(v); }

inline JVal component_value(const Rational& v) {
    if (boost::multiprecision::denominator(v) == 1)
        return JVal::str(boost::multiprecision::numerator(v).str());
    return JVal::str(v.str());
}

inline JVal complex_value(const Complex& z) {
    JVal a = JVal::array();
    a.push(component_value(z.real()));
    a.push(component_value(z.imag()));
    return a;
}

inline JVal complex_value(const GaussianRational& z) {
    JVal a = JVal::array();
    // integers serialize as JSON numbers, everything else as "p/q"
    auto comp = [](const Rational& r) {
        if (boost::multiprecision::denominator(r) == 1) {
            auto n = boost::multiprecision::numerator(r);
            if (n >= -(1ll << 62) && n <= (1ll << 62))
                return JVal::integer(n.convert_to<long long>());
        }
        return component_value(r);
    };
    a.push(comp(z.re));
    a.push(comp(z.im));
    return a;
}

template <class C>
JVal values_object(const Graph& g, const VertexFunction<C>& f) {
    JVal v = JVal::object();
    for (int x = 0; x < g.n(); ++x) v.add(g.label(x), complex_value(f[x]));
    return v;
}

inline JVal graph_document(const Graph& g, const EdgeColoring* coloring) {
    JVal doc = JVal::object();
    JVal verts = JVal::array();
    for (int x = 0; x < g.n(); ++x) verts.push(JVal::str(g.label(x)));
    doc.add("vertices", std::move(verts));
    JVal edges = JVal::array();
    for (int e = 0; e < g.m(); ++e) {
        JVal ed = JVal::object();
        ed.add("u", JVal::str(g.edges()[e].u));
        ed.add("v", JVal::str(g.edges()[e].v));
        if (coloring) ed.add("color", JVal::integer(coloring->color[e]));
        edges.push(std::move(ed));
    }
    doc.add("edges", std::move(edges));
    return doc;
}

template <class C>
JVal form_object(const Graph& g, const OneForm<C>& w) {
    JVal f = JVal::object();
    for (int e = 0; e < g.m(); ++e) {
        const Edge& ed = g.edges()[e];
        f.add(ed.u + "->" + ed.v, complex_value(w.values[e]));
    }
    return f;
}

template <class C>
JVal psi_object(const Graph& line, const VertexFunction<C>& psi) {
    JVal p = JVal::object();
    for (int x = 0; x < line.n(); ++x) p.add(line.label(x), complex_value(psi[x]));
    return p;
}

// DOT export: values become vertex labels, colors become edge colors. The
// effective configuration rides along as a comment so reruns stay diffable.
template <class C>
std::string dot_document(const Graph& g, const EdgeColoring* coloring,
                         const VertexFunction<C>* values, const std::string& config_comment) {
    static const char* palette[] = {"red", "green", "blue", "orange", "purple", "brown"};
    std::string out = "// config: " + config_comment + "\n";
    out += "graph {\n";
    for (int x = 0; x < g.n(); ++x) {
        out += "  \"" + g.label(x) + "\"";
        if (values) {
            JVal v = complex_value((*values)[x]);
            std::string rendered;
            {
                std::string tmp = v.dump();
                rendered = tmp.substr(0, tmp.size() - 1);  // drop trailing newline
            }
            out += " [label=\"" + g.label(x) + " = " + rendered + "\"]";
        }
        out += ";\n";
    }
    for (int e = 0; e < g.m(); ++e) {
        const Edge& ed = g.edges()[e];
        out += "  \"" + ed.u + "\" -- \"" + ed.v + "\"";
        if (coloring) {
            int c = coloring->color[e];
            out += " [color=" + std::string(palette[(c - 1) % 6]) + ", label=" + std::to_string(c) +
                   "]";
        }
        out += ";\n";
    }
    out += "}\n";
    return out;
}

// --- reading ---------------------------------------------------------------

// numeric literal that remembers whether it arrived in exact form
// (integer or "p/q" string) so mode conflicts can be detected
struct NumberLit {
    bool is_rational = false;
    Rational rat;
    double dbl = 0.0;
};

inline NumberLit parse_component(const nlohmann::json& j, const std::string& where) {
    NumberLit lit;
    if (j.is_number_integer()) {
        lit.is_rational = true;
        lit.rat = Rational(j.get<long long>());
        lit.dbl = static_cast<double>(j.get<long long>());
        return lit;
    }
    if (j.is_number_float()) {
        double v = j.get<double>();
        lit.dbl = v;
        if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) {
            lit.is_rational = true;
            lit.rat = Rational(static_cast<long long>(v));
        }
        return lit;
    }
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        std::size_t pos = 0;
        auto digits_ok = [&](std::size_t from, std::size_t to) {
            if (from >= to) return false;
            for (std::size_t k = from; k < to; ++k)
                if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
            return true;
        };
        if (!s.empty() && (s[0] == '+' || s[0] == '-')) pos = 1;
        std::size_t slash = s.find('/');
        bool ok = slash == std::string::npos
                      ? digits_ok(pos, s.size())
                      : digits_ok(pos, slash) && digits_ok(slash + 1, s.size());
        if (!ok) throw FormatError(where + ": expected an integer or \"p/q\" string, got \"" + s + "\"");
        try {
            lit.rat = Rational(s);
        } catch (const std::exception&) {
            throw FormatError(where + ": bad rational \"" + s + "\"");
        }
        lit.is_rational = true;
        lit.dbl = lit.rat.convert_to<double>();
        return lit;
    }
    throw FormatError(where + ": expected a number or \"p/q\" string");
}

inline std::pair<NumberLit, NumberLit> parse_complex(const nlohmann::json& j,
                                                     const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        throw FormatError(where + ": expected [re, im]");
    return {parse_component(j[0], where + "[0]"), parse_component(j[1], where + "[1]")};
}

inline Complex to_complex(const std::pair<NumberLit, NumberLit>& v) {
    return Complex(v.first.dbl, v.second.dbl);
}

inline GaussianRational to_exact(const std::pair<NumberLit, NumberLit>& v,
                                 const std::string& where) {
    if (!v.first.is_rational || !v.second.is_rational)
        throw ModeConflict(where + ": value is not exactly representable; rerun without --exact");
    return GaussianRational(v.first.rat, v.second.rat);
}

struct GraphDocument {
    Graph graph;
    std::optional<EdgeColoring> coloring;
    std::optional<std::vector<std::pair<NumberLit, NumberLit>>> values;  // by vertex index

    VertexFunction<Complex> values_floating() const {
        VertexFunction<Complex> f(graph.n());
        for (int x = 0; x < graph.n(); ++x) f[x] = to_complex((*values)[x]);
        return f;
    }
    VertexFunction<GaussianRational> values_exact() const {
        VertexFunction<GaussianRational> f(graph.n());
        for (int x = 0; x < graph.n(); ++x)
            f[x] = to_exact((*values)[x], "values." + graph.label(x));
        return f;
    }
};

inline nlohmann::json parse_json_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("not valid JSON: ") + e.what());
    }
}

inline GraphDocument parse_graph_document(const std::string& text) {
    nlohmann::json j = parse_json_text(text);
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw FormatError("graph document needs \"vertices\" and \"edges\"");
    GraphDocument doc;
    if (!j["vertices"].is_array()) throw FormatError("\"vertices\": expected an array");
    std::vector<std::string> verts;
    for (const auto& v : j["vertices"]) {
        if (!v.is_string()) throw FormatError("\"vertices\": entries must be strings");
        verts.push_back(v.get<std::string>());
    }
    if (!j["edges"].is_array()) throw FormatError("\"edges\": expected an array");
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<int> colors;
    int colored = 0;
    for (const auto& e : j["edges"]) {
        if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e["u"].is_string() ||
            !e["v"].is_string())
            throw FormatError("\"edges\": entries must be {\"u\": .., \"v\": ..}");
        edges.emplace_back(e["u"].get<std::string>(), e["v"].get<std::string>());
        int c = 0;
        if (e.contains("color")) {
            if (!e["color"].is_number_integer() || e["color"].get<long long>() < 1)
                throw FormatError("\"edges\": color must be a positive integer");
            c = static_cast<int>(e["color"].get<long long>());
            ++colored;
        }
        colors.push_back(c);
    }
    try {
        doc.graph = build_graph(verts, edges);
    } catch (const std::exception& e) {
        throw FormatError(std::string("bad graph: ") + e.what());
    }
    if (colored > 0) {
        if (colored != static_cast<int>(edges.size()))
            throw FormatError("\"edges\": either every edge carries a color or none does");
        EdgeColoring col;
        col.color.assign(doc.graph.m(), 0);
        int maxc = 0;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            int e = doc.graph.edge_index(Edge(edges[k].first, edges[k].second));
            col.color[e] = colors[k];
            maxc = std::max(maxc, colors[k]);
        }
        col.num_colors = maxc;
        if (!is_proper_coloring(doc.graph, col))
            throw FormatError("\"edges\": coloring is not proper");
        doc.coloring = std::move(col);
    }
    if (j.contains("values")) {
        if (!j["values"].is_object()) throw FormatError("\"values\": expected an object");
        std::vector<std::pair<NumberLit, NumberLit>> vals(doc.graph.n());
        std::vector<bool> seen(doc.graph.n(), false);
        for (const auto& [key, val] : j["values"].items()) {
            int x;
            try {
                x = doc.graph.index_of(key);
            } catch (const std::exception&) {
                throw FormatError("\"values\": unknown vertex \"" + key + "\"");
            }
            vals[x] = parse_complex(val, "values." + key);
            seen[x] = true;
        }
        for (int x = 0; x < doc.graph.n(); ++x)
            if (!seen[x])
                throw FormatError("\"values\": missing vertex \"" + doc.graph.label(x) + "\"");
        doc.values = std::move(vals);
    }
    return doc;
}

// 1-form document: one entry per edge, "u->v" keys; a reversed key is
// accepted and negated into the canonical direction.
inline std::vector<std::pair<NumberLit, NumberLit>> parse_form_entries(const std::string& text,
                                                                       const Graph& g,
                                                                       std::vector<bool>& flipped) {
    nlohmann::json j = parse_json_text(text);
    if (!j.is_object() || !j.contains("form") || !j["form"].is_object())
        throw FormatError("form document needs a \"form\" object");
    std::vector<std::pair<NumberLit, NumberLit>> vals(g.m());
    flipped.assign(g.m(), false);
    std::vector<bool> seen(g.m(), false);
    for (const auto& [key, val] : j["form"].items()) {
        std::size_t arrow = key.find("->");
        if (arrow == std::string::npos)
            throw FormatError("\"form\": key \"" + key + "\" is not \"u->v\"");
        std::string u = key.substr(0, arrow), v = key.substr(arrow + 2);
        int e;
        try {
            e = g.edge_index(Edge(u, v));
        } catch (const std::exception&) {
            throw FormatError("\"form\": no edge \"" + key + "\"");
        }
        if (seen[e]) throw FormatError("\"form\": duplicate entry for edge \"" + key + "\"");
        seen[e] = true;
        flipped[e] = g.edges()[e].u != u;
        vals[e] = parse_complex(val, "form." + key);
    }
    for (int e = 0; e < g.m(); ++e)
        if (!seen[e]) throw FormatError("\"form\": missing edge \"" + g.edges()[e].name() + "\"");
    return vals;
}

template <class C>
OneForm<C> form_from_entries(const Graph& g,
                             const std::vector<std::pair<NumberLit, NumberLit>>& vals,
                             const std::vector<bool>& flipped) {
    OneForm<C> w(g.m());
    for (int e = 0; e < g.m(); ++e) {
        C v;
        if constexpr (is_exact_v<C>)
            v = to_exact(vals[e], "form." + g.edges()[e].name());
        else
            v = to_complex(vals[e]);
        w.values[e] = flipped[e] ? C{} - v : v;
    }
    return w;
}

inline std::vector<std::pair<NumberLit, NumberLit>> parse_psi_entries(const std::string& text,
                                                                      const Graph& line) {
    nlohmann::json j = parse_json_text(text);
    if (!j.is_object() || !j.contains("psi") || !j["psi"].is_object())
        throw FormatError("dual-function document needs a \"psi\" object");
    std::vector<std::pair<NumberLit, NumberLit>> vals(line.n());
    std::vector<bool> seen(line.n(), false);
    for (const auto& [key, val] : j["psi"].items()) {
        int x;
        try {
            x = line.index_of(key);
        } catch (const std::exception&) {
            throw FormatError("\"psi\": unknown line-graph vertex \"" + key + "\"");
        }
        if (seen[x]) throw FormatError("\"psi\": duplicate entry \"" + key + "\"");
        seen[x] = true;
        vals[x] = parse_complex(val, "psi." + key);
    }
    for (int x = 0; x < line.n(); ++x)
        if (!seen[x]) throw FormatError("\"psi\": missing vertex \"" + line.label(x) + "\"");
    return vals;
}

template <class C>
VertexFunction<C> psi_from_entries(const Graph& line,
                                   const std::vector<std::pair<NumberLit, NumberLit>>& vals) {
    VertexFunction<C> f(line.n());
    for (int x = 0; x < line.n(); ++x) {
        if constexpr (is_exact_v<C>)
            f[x] = to_exact(vals[x], "psi." + line.label(x));
        else
            f[x] = to_complex(vals[x]);
    }
    return f;
}

} // namespace io
} // namespace twistor
