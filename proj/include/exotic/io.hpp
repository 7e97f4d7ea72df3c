#pragma once

// File formats: triangulation and cochain JSON, per-pentachoron operator and
// F dumps, Matrix Market matrices, and the versioned report and manifest.

#include "exotic/assembly.hpp"

#include <json.hpp>  // nlohmann/json, vendored

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace exotic::io {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << text;
}

inline void write_json_file(const std::filesystem::path& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

template <std::size_t N>
std::string key(const Simplex<N>& s) {
    return to_string(s);
}

template <std::size_t N>
Simplex<N> parse_key(const std::string& text) {
    Simplex<N> s{};
    std::stringstream ss(text);
    std::string item;
    std::size_t n = 0;
    while (std::getline(ss, item, ',')) {
        if (n == N) throw ValidationError("key \"" + text + "\" has too many vertices");
        try {
            std::size_t used = 0;
            s[n++] = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw ValidationError("key \"" + text + "\" is not a list of integers");
        }
    }
    if (n != N) throw ValidationError("key \"" + text + "\" has too few vertices");
    return s;
}

inline json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError(where + ": expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

// ---------------------------------------------------------------------------
// Triangulations

inline std::vector<Pentachoron> pentachora_from_json(const json& j) {
    if (!j.is_object() || !j.contains("pentachora") || !j["pentachora"].is_array())
        throw ValidationError("triangulation JSON needs an array \"pentachora\"");
    std::vector<Pentachoron> out;
    for (const auto& p : j["pentachora"]) {
        if (!p.is_array() || p.size() != 5) throw ValidationError("pentachoron " + p.dump() + " must list 5 vertices");
        Pentachoron u{};
        for (std::size_t i = 0; i < 5; ++i) {
            if (!p[i].is_number_integer()) throw ValidationError("pentachoron " + p.dump() + " has a non-integer vertex");
            u[i] = p[i].get<int>();
        }
        out.push_back(u);
    }
    return out;
}

inline json pentachora_to_json(const std::vector<Pentachoron>& pentachora) {
    json list = json::array();
    for (const auto& u : pentachora) list.push_back(u);
    return {{"pentachora", list}};
}

inline Triangulation read_triangulation(const std::filesystem::path& path) {
    return Triangulation::build(pentachora_from_json(read_json_file(path)));
}

// ---------------------------------------------------------------------------
// Cochains

inline json cocycle_to_json(const Triangulation& tri, const Cocycle2& omega) {
    json values = json::object();
    for (int s = 0; s < tri.count(2); ++s) values[key(tri.triangles()[s])] = complex_json(omega.values.at(s));
    return {{"triangles", values}};
}

inline json cochain_to_json(const Triangulation& tri, const Cochain1& nu) {
    json values = json::object();
    for (int e = 0; e < tri.count(1); ++e) values[key(tri.edges()[e])] = complex_json(nu.values.at(e));
    return {{"edges", values}};
}

namespace detail {

template <typename C, std::size_t N>
C cochain_from_json(const json& j, const char* field, const std::vector<Simplex<N>>& table, const Triangulation& tri) {
    if (!j.is_object() || !j.contains(field) || !j[field].is_object())
        throw ValidationError(std::string("cochain JSON needs an object \"") + field + "\"");
    C c;
    c.values.assign(table.size(), Complex{});
    std::vector<bool> seen(table.size(), false);
    for (const auto& [k, v] : j[field].items()) {
        const auto s = parse_key<N>(k);
        if (s != sorted(s)) throw ValidationError("key \"" + k + "\" is not ascending");
        const int idx = tri.find(s);
        if (idx < 0) throw ValidationError("key \"" + k + "\" is not a simplex of the triangulation");
        c.values[idx] = complex_from_json(v, k);
        seen[idx] = true;
    }
    std::string missing;
    for (std::size_t i = 0; i < table.size(); ++i)
        if (!seen[i]) missing += (missing.empty() ? "" : "; ") + to_string(table[i]);
    if (!missing.empty()) throw ValidationError("missing values for: " + missing);
    return c;
}

}  // namespace detail

inline Cocycle2 cocycle_from_json(const Triangulation& tri, const json& j) {
    return detail::cochain_from_json<Cocycle2>(j, "triangles", tri.triangles(), tri);
}

inline Cochain1 cochain_from_json(const Triangulation& tri, const json& j) {
    return detail::cochain_from_json<Cochain1>(j, "edges", tri.edges(), tri);
}

// ---------------------------------------------------------------------------
// Operators and weights

/// {"u": [...], "edges": {"i,j": {"a,b,c,d": [beta re, beta im, gamma re, gamma im]}}}
inline json operators_to_json(const Triangulation& tri, const PentachoronOperators& ops) {
    json edges = json::object();
    for (const auto& op : ops.ops) {
        json entries = json::object();
        for (const auto& e : op.entries)
            entries[key(tri.tetrahedra()[e.tetrahedron])] = {e.beta.real(), e.beta.imag(), e.gamma.real(), e.gamma.imag()};
        edges[key(op.b)] = entries;
    }
    return {{"u", tri.pentachora()[ops.u]}, {"edges", edges}};
}

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

/// F per pentachoron, rows and columns in the order face opposite the lowest
/// vertex first.
inline json weights_to_json(const Triangulation& tri, const std::vector<PentachoronWeight>& weights) {
    json list = json::array();
    for (const auto& w : weights) {
        json tets = json::array();
        for (int t : w.tetrahedra) tets.push_back(tri.tetrahedra()[t]);
        list.push_back({{"u", tri.pentachora()[w.u]}, {"tetrahedra", tets}, {"F", matrix_to_json(w.f)}});
    }
    return list;
}

// ---------------------------------------------------------------------------
// Matrix Market

inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string matrix_market(const Matrix& m) {
    std::ostringstream out;
    std::size_t nnz = 0;
    for (Eigen::Index i = 0; i < m.size(); ++i) nnz += m.data()[i] != Complex{};
    out << "%%MatrixMarket matrix coordinate complex general\n";
    out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            if (m(r, c) != Complex{})
                out << r + 1 << ' ' << c + 1 << ' ' << format_double(m(r, c).real()) << ' '
                    << format_double(m(r, c).imag()) << '\n';
    return out.str();
}

inline Matrix read_matrix_market(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::string line;
    std::getline(in, line);
    if (line.rfind("%%MatrixMarket matrix coordinate complex general", 0) != 0)
        throw ValidationError(path.string() + ": unsupported Matrix Market header");
    while (std::getline(in, line) && !line.empty() && line[0] == '%') {}
    std::istringstream head(line);
    Eigen::Index rows = 0, cols = 0;
    std::size_t nnz = 0;
    head >> rows >> cols >> nnz;
    Matrix m = Matrix::Zero(rows, cols);
    for (std::size_t k = 0; k < nnz; ++k) {
        Eigen::Index r = 0, c = 0;
        double re = 0, im = 0;
        if (!(in >> r >> c >> re >> im)) throw ValidationError(path.string() + ": truncated entries");
        m(r - 1, c - 1) = {re, im};
    }
    return m;
}

inline void write_matrices(const std::filesystem::path& dir, const ExoticComplex& cx) {
    write_text_file(dir / "f1.mtx", matrix_market(cx.f1));
    write_text_file(dir / "f2.mtx", matrix_market(cx.f2));
    write_text_file(dir / "f3.mtx", matrix_market(cx.f3));
    write_text_file(dir / "f4.mtx", matrix_market(cx.f4()));
    write_text_file(dir / "f5.mtx", matrix_market(cx.f5()));
}

// ---------------------------------------------------------------------------
// Report and manifest

/// Per check name: count, worst residual, threshold; then every failure.
inline json report_to_json(const DiagnosticsReport& d) {
    json summary = json::object();
    for (const auto& c : d.checks.checks) {
        auto& s = summary[c.name];
        if (s.is_null()) s = {{"count", 0}, {"max_residual", 0.0}, {"threshold", c.threshold}, {"passed", true}};
        s["count"] = s["count"].get<int>() + 1;
        if (c.residual > s["max_residual"].get<double>()) {
            s["max_residual"] = c.residual;
            s["worst_location"] = c.location;
        }
        s["threshold"] = std::max(s["threshold"].get<double>(), c.threshold);
        if (!c.passed) s["passed"] = false;
    }
    json failures = json::array();
    for (const auto& c : d.checks.failures())
        failures.push_back({{"name", c.name}, {"residual", c.residual}, {"threshold", c.threshold}, {"location", c.location}});
    return {{"schema", schema_version},
            {"passed", d.passed()},
            {"checks", summary},
            {"failures", failures},
            {"ranks", d.ranks},
            {"genericity", d.genericity}};
}

struct RunRecord {
    std::string source;                  // builtin name or input path
    std::optional<std::uint64_t> seed;   // seed requested
    std::optional<std::uint64_t> accepted_seed;
};

inline json manifest_to_json(const Triangulation& tri, const ExoticComplex& cx, const RunRecord& run,
                             const DiagnosticsReport& d) {
    json edges = json::array(), tets = json::array(), h2 = json::array(), basis = json::array(), tree = json::array();
    for (const auto& e : tri.edges()) edges.push_back(e);
    for (const auto& t : tri.tetrahedra()) tets.push_back(t);
    for (int e : cx.bases.split.basis_edges) basis.push_back(tri.edges()[e]);
    for (int e : cx.bases.split.tree_edges) tree.push_back(tri.edges()[e]);
    for (const auto& z : cx.bases.h2_generators) h2.push_back(cocycle_to_json(tri, z)["triangles"]);
    json residuals = json::object();
    for (const auto& c : d.checks.checks)
        residuals[c.name] = std::max(residuals.value(c.name, 0.0), c.residual);
    json m = {{"schema", schema_version},
              {"source", run.source},
              {"seed", run.seed ? json(*run.seed) : json(nullptr)},
              {"accepted_seed", run.accepted_seed ? json(*run.accepted_seed) : json(nullptr)},
              {"tree_root", cx.options.root},
              {"vertex_order", cx.roots.vertex_order},
              {"tolerance", cx.options.tol},
              {"dimensions", cx.dimensions},
              {"edge_order", edges},
              {"tetrahedron_order", tets},
              {"tree_edges", tree},
              {"basis_edges", basis},
              {"h2_basis", "echelon null space of delta^2, independent of im delta^1, in order"},
              {"h2_generators", h2},
              {"matrices", {"f1.mtx", "f2.mtx", "f3.mtx", "f4.mtx", "f5.mtx"}},
              {"residuals", residuals},
              {"ranks", d.ranks}};
    m["pentachora"] = pentachora_to_json(tri.pentachora())["pentachora"];
    m["omega"] = cocycle_to_json(tri, cx.omega)["triangles"];
    return m;
}

/// Triangulation, cocycle and options recorded in a manifest.
struct ManifestInputs {
    std::vector<Pentachoron> pentachora;
    json omega;
    PipelineOptions options;
};

inline ManifestInputs manifest_inputs(const json& m) {
    if (!m.is_object() || m.value("schema", 0) != schema_version) throw ValidationError("manifest schema must be 1");
    for (const char* k : {"pentachora", "omega", "tree_root", "vertex_order", "tolerance"})
        if (!m.contains(k)) throw ValidationError(std::string("manifest lacks \"") + k + "\"");
    ManifestInputs in;
    in.pentachora = pentachora_from_json(json{{"pentachora", m["pentachora"]}});
    in.omega = json{{"triangles", m["omega"]}};
    in.options.root = m["tree_root"].get<int>();
    in.options.vertex_order = m["vertex_order"].get<std::vector<int>>();
    in.options.tol = m["tolerance"].get<double>();
    return in;
}

}  // namespace exotic::io
