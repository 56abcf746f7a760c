#include "splayer/cli.hpp"

#include "splayer/error.hpp"
#include "splayer/problem_json.hpp"
#include "splayer/report.hpp"

#include <charconv>
#include <cmath>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

namespace splayer::cli {

namespace {

double parse_positive(std::string_view s) {
    double v = 0.0;
    const std::string str(s);
    std::size_t used = 0;
    try {
        v = std::stod(str, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != str.size() || !(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(fmt::format("expected a positive number, got '{}'", s));
    }
    return v;
}

int parse_int(std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigError(fmt::format("expected an integer, got '{}'", s));
    }
    return v;
}

}  // namespace

std::vector<double> parse_decades(std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) {
        return {parse_positive(text)};
    }
    const double from = parse_positive(text.substr(0, colon));
    const double to = parse_positive(text.substr(colon + 1));
    const double span = std::log10(from) - std::log10(to);
    const double steps = std::round(std::abs(span));
    if (std::abs(std::abs(span) - steps) > 1e-9) {
        throw ConfigError(fmt::format("range '{}' does not span a whole number of decades", text));
    }
    const double from_exp = std::log10(from);
    const bool from_is_power = std::abs(from_exp - std::round(from_exp)) < 1e-12;
    const double dir = span >= 0 ? -1.0 : 1.0;
    std::vector<double> out;
    for (int k = 0; k <= static_cast<int>(steps); ++k) {
        // Exact powers of ten are generated directly so 1e-6 matches its literal.
        out.push_back(from_is_power ? std::pow(10.0, std::round(from_exp) + dir * k)
                                    : from * std::pow(10.0, dir * k));
    }
    return out;
}

std::vector<int> parse_n_values(std::string_view text) {
    std::vector<int> out;
    if (const std::size_t colon = text.find(':'); colon != std::string_view::npos) {
        const int from = parse_int(text.substr(0, colon));
        const int to = parse_int(text.substr(colon + 1));
        if (from <= 0 || to < from) {
            throw ConfigError(fmt::format("bad N range '{}'", text));
        }
        for (int n = from; n <= to; n *= 2) {
            out.push_back(n);
        }
        if (out.back() != to) {
            throw ConfigError(fmt::format("N range '{}' must reach its upper end by doubling", text));
        }
        return out;
    }
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        out.push_back(parse_int(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

namespace {

struct RawOptions {
    std::string problem;
    std::string problem_file;
    std::string epsilon, epsilon_range, mu, mu_range;
    std::string n;
    std::string mesh = "sb";
    std::string format = "csv";
    std::string double_mesh = "bisect";
    std::string out;
    bool plot = false;
    int samples = kDefaultSamples;
    unsigned threads = 0;
    std::string exact, exact_d1, exact_d2;
};

void add_common(CLI::App* sub, RawOptions& o, bool ranges) {
    sub->add_option("--problem", o.problem, "Built-in problem: ex1 or ex2");
    sub->add_option("--problem-file", o.problem_file, "JSON problem document");
    sub->add_option("--epsilon", o.epsilon, "Diffusion parameter");
    sub->add_option("--mu", o.mu, "Convection parameter");
    if (ranges) {
        sub->add_option("--epsilon-range", o.epsilon_range, "Decade range A:B for epsilon");
        sub->add_option("--mu-range", o.mu_range, "Decade range A:B for mu");
    }
    sub->add_option("--n", o.n, "Number of intervals: N, N1,N2,... or N1:N2 (doubling)")->required();
    sub->add_option("--out", o.out, "Output path ('-' for stdout)");
    sub->add_option("--samples", o.samples, "Coefficient samples per subinterval")->check(CLI::Range(2, 100000000));
}

void add_mesh_option(CLI::App* sub, RawOptions& o) {
    sub->add_option("--mesh", o.mesh, "Mesh family: sb, shishkin, uniform");
}

void add_sweep_options(CLI::App* sub, RawOptions& o) {
    sub->add_option("--format", o.format, "csv or md");
    sub->add_option("--double-mesh", o.double_mesh, "bisect or regenerate");
    sub->add_option("--threads", o.threads, "Worker threads (default: SPLAYER_THREADS or hardware)");
}

}  // namespace

std::optional<RunConfig> parse_arguments(int argc, const char* const* argv, std::ostream& out) {
    CLI::App app{"Upwind solver for two-parameter singularly perturbed problems with an interior discontinuity"};
    app.require_subcommand(1);
    RawOptions o;

    auto* solve = app.add_subcommand("solve", "Solve once and write (i, x, Y)");
    add_common(solve, o, false);
    add_mesh_option(solve, o);
    solve->add_flag("--plot", o.plot, "Also write an SVG plot next to the CSV");

    auto* converge = app.add_subcommand("converge", "Double-mesh error and order table");
    add_common(converge, o, true);
    add_mesh_option(converge, o);
    add_sweep_options(converge, o);

    auto* compare = app.add_subcommand("compare", "Shishkin vs Shishkin-Bakhvalov orders");
    add_common(compare, o, true);
    add_sweep_options(compare, o);

    auto* mesh = app.add_subcommand("mesh", "Dump mesh nodes");
    add_common(mesh, o, false);
    add_mesh_option(mesh, o);

    auto* manufactured = app.add_subcommand("manufactured", "True-error table against an exact solution");
    add_common(manufactured, o, true);
    add_mesh_option(manufactured, o);
    add_sweep_options(manufactured, o);
    manufactured->add_option("--exact", o.exact, "Exact solution y(x)")->required();
    manufactured->add_option("--exact-d1", o.exact_d1, "y'(x)")->required();
    manufactured->add_option("--exact-d2", o.exact_d2, "y''(x)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::ParseError& err) {
        throw ConfigError(fmt::format("{}\nRun with --help for usage.", err.what()));
    }

    RunConfig cfg;
    if (solve->parsed()) cfg.command = Subcommand::Solve;
    if (converge->parsed()) cfg.command = Subcommand::Converge;
    if (compare->parsed()) cfg.command = Subcommand::Compare;
    if (mesh->parsed()) cfg.command = Subcommand::Mesh;
    if (manufactured->parsed()) cfg.command = Subcommand::Manufactured;

    if (o.problem.empty() == o.problem_file.empty()) {
        throw ConfigError("exactly one of --problem (ex1, ex2) or --problem-file is required");
    }
    if (!o.problem.empty()) {
        if (o.problem == "ex1") {
            cfg.builtin = BuiltinExample::Ex1;
        } else if (o.problem == "ex2") {
            cfg.builtin = BuiltinExample::Ex2;
        } else {
            throw ConfigError(fmt::format("unknown built-in problem '{}' (expected ex1 or ex2)", o.problem));
        }
    } else {
        cfg.problem_file = o.problem_file;
    }

    auto values = [](const std::string& scalar, const std::string& range, const char* name) {
        if (!scalar.empty() && !range.empty()) {
            throw ConfigError(fmt::format("give either --{0} or --{0}-range, not both", name));
        }
        if (!range.empty()) return parse_decades(range);
        if (!scalar.empty()) {
            if (scalar.find(':') != std::string::npos) return parse_decades(scalar);
            return std::vector<double>{parse_positive(scalar)};
        }
        return std::vector<double>{};
    };
    cfg.epsilon = values(o.epsilon, o.epsilon_range, "epsilon");
    cfg.mu = values(o.mu, o.mu_range, "mu");
    if (cfg.epsilon.size() > 1 && cfg.mu.size() > 1) {
        throw ConfigError("only one of epsilon and mu can be swept at a time");
    }
    const bool sweeps = cfg.command == Subcommand::Converge || cfg.command == Subcommand::Compare ||
                        cfg.command == Subcommand::Manufactured;
    if (!sweeps && (cfg.epsilon.size() > 1 || cfg.mu.size() > 1)) {
        throw ConfigError("this subcommand takes a single epsilon and mu");
    }

    cfg.n_values = parse_n_values(o.n);
    const bool layer_mesh = o.mesh != "uniform" || cfg.command == Subcommand::Compare;
    for (int n : cfg.n_values) {
        if (layer_mesh ? (n < 16 || n % 8 != 0) : (n < 2 || n % 2 != 0)) {
            throw ConfigError(fmt::format("invalid N = {}: {}", n,
                                          layer_mesh ? "layer-adapted meshes need a multiple of 8, at least 16"
                                                     : "uniform meshes need an even N"));
        }
    }
    if (!sweeps && cfg.n_values.size() != 1) {
        throw ConfigError("this subcommand takes a single N");
    }

    cfg.family = mesh_family_from_string(o.mesh);
    cfg.double_mesh = double_mesh_mode_from_string(o.double_mesh);
    if (o.format == "csv") {
        cfg.format = OutputFormat::Csv;
    } else if (o.format == "md") {
        cfg.format = OutputFormat::Markdown;
    } else {
        throw ConfigError(fmt::format("unknown format '{}' (expected csv or md)", o.format));
    }
    if (!o.out.empty()) cfg.output = o.out;
    cfg.plot = o.plot;
    cfg.samples = o.samples;
    cfg.threads = o.threads;
    cfg.exact = o.exact;
    cfg.exact_d1 = o.exact_d1;
    cfg.exact_d2 = o.exact_d2;
    return cfg;
}

namespace {

std::filesystem::path default_output(const RunConfig& cfg) {
    const std::string ext = cfg.format == OutputFormat::Markdown ? ".md" : ".csv";
    switch (cfg.command) {
    case Subcommand::Solve: return "solution.csv";
    case Subcommand::Mesh: return "mesh.csv";
    case Subcommand::Converge: return "table" + ext;
    case Subcommand::Compare: return "compare" + ext;
    case Subcommand::Manufactured: return "manufactured" + ext;
    }
    return "out.csv";
}

void emit(const std::filesystem::path& path, const std::string& content, std::ostream& out) {
    if (path == "-") {
        out << content;
    } else {
        write_file_atomic(path, content);
    }
}

ProblemSpec load(const RunConfig& cfg) {
    ProblemSpec spec = cfg.builtin ? builtin_example(*cfg.builtin) : load_problem(*cfg.problem_file);
    if (cfg.builtin && (cfg.epsilon.empty() || cfg.mu.empty())) {
        throw ConfigError("--epsilon and --mu (or their ranges) are required with a built-in problem");
    }
    if (cfg.epsilon.size() == 1) spec.epsilon = cfg.epsilon.front();
    if (cfg.mu.size() == 1) spec.mu = cfg.mu.front();
    return spec;
}

/// Swept parameter and its values; a single point sweeps mu over one value.
std::pair<SweepParam, std::vector<double>> sweep_of(const RunConfig& cfg, const ProblemSpec& spec) {
    if (cfg.epsilon.size() > 1) return {SweepParam::Epsilon, cfg.epsilon};
    if (cfg.mu.size() > 1) return {SweepParam::Mu, cfg.mu};
    return {SweepParam::Mu, {spec.mu}};
}

void report_failures(const ConvergenceTable& t, std::ostream& err, bool& failed) {
    for (std::size_t r = 0; r < t.rows(); ++r) {
        for (std::size_t c = 0; c < t.n_values.size(); ++c) {
            if (!t.failures[r][c].empty()) {
                failed = true;
                err << fmt::format("cell {}={}, N={} ({} mesh) failed: {}\n", to_string(t.sweep_param),
                                   t.param_values[r], t.n_values[c], to_string(t.mesh_family), t.failures[r][c]);
            }
        }
    }
}

void print_warnings(const Mesh& mesh, std::ostream& err) {
    for (const auto& w : mesh.warnings) {
        err << "warning: " << w << '\n';
    }
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const ProblemSpec spec = load(cfg);
    const std::filesystem::path path = cfg.output.value_or(default_output(cfg));
    SweepSettings settings{.family = cfg.family, .mode = cfg.double_mesh, .samples = cfg.samples,
                           .threads = cfg.threads != 0 ? cfg.threads : threads_from_environment()};

    switch (cfg.command) {
    case Subcommand::Solve:
    case Subcommand::Mesh: {
        const RegimeData regime = derive_regime(spec, cfg.samples);
        const Mesh mesh = build_mesh(cfg.family, regime, cfg.n_values.front(), spec.d);
        print_warnings(mesh, err);
        if (cfg.command == Subcommand::Mesh) {
            emit(path, mesh_csv(mesh), out);
            return kExitOk;
        }
        const Solution sol = solve_problem(spec, mesh);
        emit(path, solution_csv(mesh, sol), out);
        if (cfg.plot) {
            std::filesystem::path svg = path == "-" ? std::filesystem::path("solution.svg") : path;
            svg.replace_extension(".svg");
            const SvgOptions opts{.title = fmt::format("Y(x), epsilon={}, mu={}, N={}, {} mesh", spec.epsilon,
                                                       spec.mu, mesh.n, to_string(mesh.family))};
            write_file_atomic(svg, line_plot_svg(mesh.points, sol.y, opts));
        }
        err << fmt::format("{}: theta1={} theta2={} residual={:.3e}\n", to_string(regime.layer_case),
                           regime.theta1, regime.theta2, sol.residual_inf);
        return kExitOk;
    }
    case Subcommand::Converge:
    case Subcommand::Manufactured: {
        const auto [param, values] = sweep_of(cfg, spec);
        ConvergenceTable table;
        if (cfg.command == Subcommand::Converge) {
            table = convergence_table(spec, param, values, cfg.n_values, settings);
        } else {
            const ManufacturedSolution exact{Coefficient::parse(cfg.exact), Coefficient::parse(cfg.exact_d1),
                                             Coefficient::parse(cfg.exact_d2)};
            table = manufactured_convergence(spec, exact, param, values, cfg.n_values, settings);
        }
        emit(path, cfg.format == OutputFormat::Csv ? convergence_csv(table) : convergence_markdown(table), out);
        bool failed = false;
        report_failures(table, err, failed);
        return failed ? kExitNumerical : kExitOk;
    }
    case Subcommand::Compare: {
        const auto [param, values] = sweep_of(cfg, spec);
        const MeshComparison cmp = compare_meshes(spec, param, values, cfg.n_values, settings);
        emit(path, cfg.format == OutputFormat::Csv ? comparison_csv(cmp) : comparison_markdown(cmp), out);
        bool failed = false;
        report_failures(cmp.shishkin, err, failed);
        report_failures(cmp.shishkin_bakhvalov, err, failed);
        return failed ? kExitNumerical : kExitOk;
    }
    }
    return kExitConfig;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        const auto cfg = parse_arguments(argc, argv, out);
        if (!cfg) {
            return kExitOk;
        }
        return run(*cfg, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ParseError& e) {
        err << "error: expression " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace splayer::cli
