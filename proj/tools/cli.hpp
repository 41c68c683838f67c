#pragma once

#include "greedy_morse/greedy_morse.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace greedy_morse::cli {

enum ExitCode : int {
    Pass = 0,
    PropertyFailure = 1,
    InputError = 2,
};

struct Options {
    std::string input;
    std::string scalars;
    std::string output;
    std::string dot_output;
    std::string format = "json";
    std::string what = "hasse";
    bool fast = false;
    bool modified = false;
    bool vpaths = false;
    std::uint64_t seed = 1;
    bool seed_given = false;
    std::size_t trials = 100;
    std::size_t max_vertices = 25;
    int max_dim = 3;
    std::size_t threads = 0;
    std::vector<std::string> checks;
};

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline void write_to(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw Error(ErrorKind::InvalidInput, "cannot write " + path);
    }
    file << text;
}

inline std::string simplex_label(const Simplex& s) { return s.to_string(); }

inline int run_gradient(const Options& o, std::ostream& out)
{
    const ComplexInput in = load_complex_input(o.input, o.scalars);
    if (in.polyhedral) {
        if (o.fast) {
            throw Error(ErrorKind::InvalidInput, "--fast applies to simplicial complexes only");
        }
        const auto k = PolyhedralComplex::build(in.cells, in.valuation);
        const auto v = compute_gradient(k);
        const auto labels = [&k](CellId c) { return simplex_label(k.cell(c)); };
        if (o.format == "dot") {
            write_to(o.output, vpath_digraph_to_dot(k.poset(), v, labels), out);
        } else {
            write_to(o.output, dump(gradient_report(k, v, o.vpaths)), out);
        }
        if (!o.dot_output.empty()) {
            write_to(o.dot_output, vpath_digraph_to_dot(k.poset(), v, labels), out);
        }
        return Pass;
    }

    const auto k = build_simplicial(in);
    const auto v = o.fast ? smooth_fast_match(k)
                          : compute_gradient(k, o.modified ? HasseVariant::Modified : HasseVariant::Plain);
    const auto labels = [&k](CellId c) { return simplex_label(k.simplex(c)); };
    if (o.format == "dot") {
        write_to(o.output, vpath_digraph_to_dot(k.poset(), v, labels), out);
    } else {
        write_to(o.output, dump(gradient_report(k, v, o.vpaths)), out);
    }
    if (!o.dot_output.empty()) {
        write_to(o.dot_output, vpath_digraph_to_dot(k.poset(), v, labels), out);
    }
    return Pass;
}

inline int run_smoothcheck(const Options& o, std::ostream& out)
{
    const auto k = build_simplicial(load_complex_input(o.input, o.scalars));
    const auto report = check_smooth(k);
    write_to(o.output, dump(smoothness_report_json(k, report)), out);
    return report.smooth ? Pass : PropertyFailure;
}

inline int run_subdivide(const Options& o, std::ostream& out)
{
    const auto k = build_simplicial(load_complex_input(o.input, o.scalars));
    write_to(o.output, dump(subdivision_to_json(barycentric_subdivide(k))), out);
    return Pass;
}

inline int run_cat0(const Options& o, std::ostream& out)
{
    Pip p = pip_from_json(parse_json_text(read_text(o.input)));
    if (auto problems = validate_pip(p); !problems.empty()) {
        throw Error(ErrorKind::InvalidInput, problems.front());
    }
    if (o.seed_given) {
        p = p.permuted(random_permutation(o.seed, p.size()));
    }
    const auto cert = collapse_cat0(p);
    if (o.format == "dot") {
        const auto& x = cert.complex;
        write_to(o.output,
                 hasse_to_dot(
                     build_modified_hasse(x), &cert.field, [&](CellId c) { return describe(p, x.cells[c]); },
                     [&p](const CubeCell& w) { return describe(p, w); }),
                 out);
    } else {
        write_to(o.output, dump(certificate_to_json(p, cert)), out);
    }
    return Pass;
}

inline int run_verify(const Options& o, std::ostream& out)
{
    VerificationSuiteConfig config;
    config.seed = o.seed;
    config.trials = o.trials;
    config.max_vertices = o.max_vertices;
    config.max_dim = o.max_dim;
    config.checks = o.checks;
    config.threads = o.threads;
    const auto report = run_verification_suite(config);
    write_to(o.output, dump(suite_report_to_json(report)), out);
    return report.ok() ? Pass : PropertyFailure;
}

inline int run_export_dot(const Options& o, std::ostream& out)
{
    const ComplexInput in = load_complex_input(o.input, o.scalars);
    std::string text;
    if (in.polyhedral) {
        const auto k = PolyhedralComplex::build(in.cells, in.valuation);
        const auto v = compute_gradient(k);
        const auto labels = [&k](CellId c) { return simplex_label(k.cell(c)); };
        text = o.what == "vpaths" ? vpath_digraph_to_dot(k.poset(), v, labels)
                                  : hasse_to_dot(build_modified_hasse(k), &v, labels,
                                                 [](const OrderedValue& w) { return w.to_string(); });
    } else {
        const auto k = build_simplicial(in);
        const auto variant = o.modified ? HasseVariant::Modified : HasseVariant::Plain;
        const auto v = compute_gradient(k, variant);
        const auto labels = [&k](CellId c) { return simplex_label(k.simplex(c)); };
        const auto weight = [](const OrderedValue& w) { return w.to_string(); };
        if (o.what == "vpaths") {
            text = vpath_digraph_to_dot(k.poset(), v, labels);
        } else {
            text = hasse_to_dot(o.modified ? build_modified_hasse(k) : build_hasse(k), &v, labels, weight);
        }
    }
    write_to(o.output, text, out);
    return Pass;
}

/// Parses and runs one subcommand. Reports go to `out` (or -o files),
/// diagnostics and the elapsed time to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Greedy discrete Morse gradients on simplicial, polyhedral and cube complexes"};
    app.require_subcommand(1);
    Options o;

    auto add_input = [&o](CLI::App* sub) {
        sub->add_option("input", o.input, "Complex JSON, or OFF mesh with --scalars")->required();
        sub->add_option("--scalars", o.scalars, "Per-vertex scalar file for an OFF mesh");
        sub->add_option("-o,--output", o.output, "Write the report here instead of standard output");
    };

    auto* gradient = app.add_subcommand("gradient", "Greedy discrete gradient of a complex");
    add_input(gradient);
    gradient->add_flag("--fast", o.fast, "Use the steepest-descent matcher (smooth input only)");
    gradient->add_flag("--modified-hasse", o.modified, "Match on the modified Hasse diagram");
    gradient->add_flag("--vpaths", o.vpaths, "Include one V-path per matched cell");
    gradient->add_option("--format", o.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    gradient->add_option("--dot", o.dot_output, "Also write the V-path digraph as DOT");

    auto* smooth = app.add_subcommand("smoothcheck", "Report cells that break smoothness");
    add_input(smooth);

    auto* subdivide = app.add_subcommand("subdivide", "Barycentric subdivision with set-valued function");
    add_input(subdivide);

    auto* cat0 = app.add_subcommand("cat0", "Collapse certificate for the cube complex of a poset");
    cat0->add_option("input", o.input, "Poset JSON with elements, covers and inconsistent pairs")->required();
    cat0->add_option("-o,--output", o.output, "Write the report here instead of standard output");
    cat0->add_option("--seed", o.seed, "Relabel the elements with a random order drawn from this seed");
    cat0->add_option("--format", o.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

    auto* verify = app.add_subcommand("verify", "Property checks on random instances");
    verify->add_option("--seed", o.seed, "Seed of trial 0; trial i uses seed + i");
    verify->add_option("--trials", o.trials, "Number of trials");
    verify->add_option("--max-vertices", o.max_vertices, "Vertex bound of random complexes")
        ->check(CLI::PositiveNumber);
    verify->add_option("--max-dim", o.max_dim, "Dimension bound of random complexes")->check(CLI::NonNegativeNumber);
    verify->add_option("--check", o.checks, "Property to run (repeatable; default all)");
    verify->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
    verify->add_option("-o,--output", o.output, "Write the report here instead of standard output");

    auto* export_dot = app.add_subcommand("export-dot", "Hasse diagram or V-path digraph as DOT");
    add_input(export_dot);
    export_dot->add_flag("--modified-hasse", o.modified, "Use the modified Hasse diagram");
    export_dot->add_option("--what", o.what, "hasse or vpaths")->check(CLI::IsMember({"hasse", "vpaths"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream help;
        const int code = app.exit(e, help, err);
        out << help.str();
        return code == 0 ? Pass : InputError;
    }
    o.seed_given = cat0->count("--seed") > 0;

    const auto start = std::chrono::steady_clock::now();
    int code = Pass;
    std::string name;
    try {
        if (*gradient) {
            name = "gradient";
            code = run_gradient(o, out);
        } else if (*smooth) {
            name = "smoothcheck";
            code = run_smoothcheck(o, out);
        } else if (*subdivide) {
            name = "subdivide";
            code = run_subdivide(o, out);
        } else if (*cat0) {
            name = "cat0";
            code = run_cat0(o, out);
        } else if (*verify) {
            name = "verify";
            code = run_verify(o, out);
        } else {
            name = "export-dot";
            code = run_export_dot(o, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        const bool failure = e.kind() == ErrorKind::NotSmooth || e.kind() == ErrorKind::NotCollapsible ||
                             e.kind() == ErrorKind::CycleDetected;
        return failure ? PropertyFailure : InputError;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    err << name << ": " << std::fixed << std::setprecision(3) << seconds << " s\n";
    return code;
}

} // namespace greedy_morse::cli
