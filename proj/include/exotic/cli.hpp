#pragma once

// Command-line front end: validate, cocycle, build, check, export.
// Exit codes: 0 success, 1 validation failure, 2 genericity failure,
// 3 invariant failure, 64 usage error.

#include "exotic/builtin.hpp"
#include "exotic/io.hpp"
#include "exotic/suite.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>

namespace exotic::cli {

enum ExitCode : int { ok = 0, validation_failure = 1, genericity_failure = 2, invariant_failure = 3, usage_error = 64 };

struct RunConfig {
    std::string builtin;
    std::string input;
    std::string cocycle;
    std::optional<std::uint64_t> seed;
    Vertex root = 1;
    double tol = 1e-9;
    std::string out;
    std::string manifest;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Triangulation load_triangulation(const RunConfig& cfg) {
    if (!cfg.input.empty()) return io::read_triangulation(cfg.input);
    const auto name = cfg.builtin.empty() ? std::string("boundary-5-simplex") : cfg.builtin;
    const auto names = builtin::names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw UsageError("unknown builtin '" + name + "' (boundary-5-simplex or cp2-9)");
    return Triangulation::build(builtin::by_name(name));
}

inline std::string source_name(const RunConfig& cfg) {
    return cfg.input.empty() ? (cfg.builtin.empty() ? "boundary-5-simplex" : cfg.builtin) : cfg.input;
}

struct LoadedCocycle {
    Cocycle2 omega;
    io::RunRecord record;
};

inline LoadedCocycle load_cocycle(const Triangulation& tri, const RunConfig& cfg) {
    LoadedCocycle out;
    out.record.source = source_name(cfg);
    if (!cfg.cocycle.empty()) {
        out.omega = io::cocycle_from_json(tri, io::read_json_file(cfg.cocycle));
        return out;
    }
    if (!cfg.seed) throw UsageError("one cocycle source is required: --cocycle FILE or --seed N");
    auto g = generate_generic_cocycle(tri, *cfg.seed);
    out.omega = std::move(g.omega);
    out.record.seed = cfg.seed;
    out.record.accepted_seed = g.seed;
    return out;
}

inline void print_summary(std::ostream& out, const DiagnosticsReport& d) {
    std::map<std::string, std::pair<double, bool>> worst;
    for (const auto& c : d.checks.checks) {
        auto [it, fresh] = worst.try_emplace(c.name, c.residual, c.passed);
        if (!fresh) it->second = {std::max(it->second.first, c.residual), it->second.second && c.passed};
    }
    for (const auto& [name, v] : worst)
        out << "  " << std::left << std::setw(36) << name << std::scientific << std::setprecision(3) << v.first
            << (v.second ? "  ok" : "  FAIL") << '\n';
    out << std::defaultfloat;
    for (const auto& [name, r] : d.ranks) out << "  rank " << name << " = " << r << '\n';
    for (const auto& c : d.checks.failures())
        out << "  failure: " << c.name << " residual " << c.residual << " at " << c.location << '\n';
    out << (d.passed() ? "PASS" : "FAIL") << " (" << d.checks.checks.size() << " checks)\n";
}

inline int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    const auto tri = load_triangulation(cfg);
    const auto rep = check_closed_oriented(tri);
    out << "vertices " << tri.vertex_count() << ", f-vector";
    for (int k = 0; k <= 4; ++k) out << ' ' << tri.count(k);
    out << ", euler characteristic " << tri.euler_characteristic() << '\n';
    for (int t : rep.bad_coface_count)
        out << "  tetrahedron [" << to_string(tri.tetrahedra()[t]) << "] lies in " << rep.coface_counts[t]
            << " pentachora\n";
    for (int t : rep.orientation_mismatch)
        out << "  tetrahedron [" << to_string(tri.tetrahedra()[t]) << "] receives equal induced orientations\n";
    if (!rep.connected()) out << "  the triangulation has " << rep.components << " components\n";
    out << (rep.passed() ? "valid closed oriented 4-manifold triangulation" : "invalid triangulation") << '\n';
    return rep.passed() ? ok : validation_failure;
}

inline int cmd_cocycle(const RunConfig& cfg, std::ostream& out) {
    const auto tri = load_triangulation(cfg);
    const auto loaded = load_cocycle(tri, cfg);
    const auto closed = validate_cocycle(tri, loaded.omega, cfg.tol);
    if (!closed.passed) {
        out << "not a cocycle: residual " << closed.max_residual << " at tetrahedron ["
            << to_string(tri.tetrahedra()[closed.worst_tetrahedron]) << "]\n";
        return validation_failure;
    }
    if (const auto g = check_genericity(tri, loaded.omega); !g.generic()) {
        out << "not generic: " << g.failure << " at [" << g.location << "]\n";
        return genericity_failure;
    }
    const auto j = io::cocycle_to_json(tri, loaded.omega);
    if (cfg.out.empty()) out << j.dump(2) << '\n';
    else io::write_json_file(cfg.out, j);
    if (loaded.record.accepted_seed) out << "generic cocycle from seed " << *loaded.record.accepted_seed << '\n';
    out << "cocycle closed and generic\n";
    return ok;
}

inline void write_exports(const std::filesystem::path& dir, const Triangulation& tri, const ExoticComplex& cx,
                          const io::RunRecord& record, const DiagnosticsReport& d) {
    io::write_matrices(dir, cx);
    io::write_json_file(dir / "manifest.json", io::manifest_to_json(tri, cx, record, d));
    io::write_json_file(dir / "report.json", io::report_to_json(d));
    io::json ops = io::json::array();
    for (const auto& o : cx.operators) ops.push_back(io::operators_to_json(tri, o));
    io::write_json_file(dir / "operators.json", ops);
    io::write_json_file(dir / "weights.json", io::weights_to_json(tri, cx.weights));
}

inline PipelineOptions pipeline_options(const RunConfig& cfg) {
    PipelineOptions o;
    o.root = cfg.root;
    o.tol = cfg.tol;
    return o;
}

inline int cmd_build(const RunConfig& cfg, std::ostream& out) {
    const auto tri = load_triangulation(cfg);
    const auto loaded = load_cocycle(tri, cfg);
    const auto cx = build_exotic_complex(tri, loaded.omega, pipeline_options(cfg));
    const auto d = verify_chain(tri, cx);
    const std::filesystem::path dir = cfg.out.empty() ? "." : cfg.out;
    write_exports(dir, tri, cx, loaded.record, d);
    out << "dimensions";
    for (int n : cx.dimensions) out << ' ' << n;
    out << "\nwritten to " << dir.string() << '\n';
    print_summary(out, d);
    return d.passed() ? ok : invariant_failure;
}

inline int cmd_check(const RunConfig& cfg, std::ostream& out) {
    const auto tri = load_triangulation(cfg);
    const auto loaded = load_cocycle(tri, cfg);
    SuiteOptions options;
    options.pipeline = pipeline_options(cfg);
    options.seed = loaded.record.accepted_seed.value_or(1);
    const auto d = run_invariant_suite(tri, loaded.omega, options);
    if (!cfg.out.empty()) {
        const auto cx = build_exotic_complex(tri, loaded.omega, options.pipeline);
        write_exports(cfg.out, tri, cx, loaded.record, d);
    }
    print_summary(out, d);
    out << "elapsed " << std::fixed << std::setprecision(1) << d.elapsed_ms << " ms\n" << std::defaultfloat;
    return d.passed() ? ok : invariant_failure;
}

inline int cmd_export(const RunConfig& cfg, std::ostream& out) {
    if (cfg.manifest.empty()) throw UsageError("export needs --manifest FILE");
    const auto manifest = io::read_json_file(cfg.manifest);
    const auto in = io::manifest_inputs(manifest);
    const auto tri = Triangulation::build(in.pentachora);
    const auto omega = io::cocycle_from_json(tri, in.omega);
    const auto cx = build_exotic_complex(tri, omega, in.options);
    const std::filesystem::path dir = cfg.out.empty() ? "." : cfg.out;
    io::write_matrices(dir, cx);
    out << "matrices re-emitted to " << dir.string() << '\n';
    return ok;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Exotic chain complex of a triangulated 4-manifold with a generic 2-cocycle", "exotic"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::uint64_t seed = 0;

    auto add_triangulation = [&](CLI::App* sub) {
        auto* b = sub->add_option("--builtin", cfg.builtin, "bundled triangulation: boundary-5-simplex or cp2-9");
        auto* i = sub->add_option("--input", cfg.input, "triangulation JSON file");
        b->excludes(i);
    };
    auto add_cocycle = [&](CLI::App* sub) {
        auto* c = sub->add_option("--cocycle", cfg.cocycle, "cocycle JSON file");
        auto* s = sub->add_option("--seed", seed, "seed for a generated generic cocycle");
        c->excludes(s);
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--root", cfg.root, "maximal tree root vertex")->capture_default_str();
        sub->add_option("--tol", cfg.tol, "relative tolerance")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--out", cfg.out, "output directory");
    };

    auto* validate = app.add_subcommand("validate", "check the triangulation");
    add_triangulation(validate);
    auto* cocycle = app.add_subcommand("cocycle", "generate or validate a cocycle");
    add_triangulation(cocycle);
    add_cocycle(cocycle);
    cocycle->add_option("--tol", cfg.tol, "relative tolerance")->check(CLI::PositiveNumber);
    cocycle->add_option("--out", cfg.out, "output cocycle JSON file (standard output if absent)");
    auto* build = app.add_subcommand("build", "build the complex and write exports");
    add_triangulation(build);
    add_cocycle(build);
    add_common(build);
    auto* check = app.add_subcommand("check", "build and run every invariant");
    add_triangulation(check);
    add_cocycle(check);
    add_common(check);
    auto* exp = app.add_subcommand("export", "re-emit matrices from a saved manifest");
    exp->add_option("--manifest", cfg.manifest, "manifest.json written by build")->required();
    exp->add_option("--out", cfg.out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }
    for (auto* sub : {cocycle, build, check})
        if (sub->parsed() && sub->count("--seed")) cfg.seed = seed;

    try {
        if (validate->parsed()) return cmd_validate(cfg, out);
        if (cocycle->parsed()) return cmd_cocycle(cfg, out);
        if (build->parsed()) return cmd_build(cfg, out);
        if (check->parsed()) return cmd_check(cfg, out);
        return cmd_export(cfg, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return usage_error;
    } catch (const ContractViolation& e) {
        err << "usage error: " << e.what() << '\n';
        return usage_error;
    } catch (const ValidationError& e) {
        err << "validation failure: " << e.what() << '\n';
        return validation_failure;
    } catch (const GenericityError& e) {
        err << "genericity failure: " << e.what() << '\n';
        return genericity_failure;
    } catch (const InternalError& e) {
        err << "invariant failure: " << e.what() << '\n';
        return invariant_failure;
    }
}

}  // namespace exotic::cli
