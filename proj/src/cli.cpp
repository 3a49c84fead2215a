#include "eisheat/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "eisheat/experiments.hpp"

namespace eis::cli {

namespace {

namespace fs = std::filesystem;

struct Config {
    std::string scheme = "block2";
    double c = 0.0;
    std::string problem = "exp-cos";
    std::string integrator = "rk4";
    std::optional<double> t_final;
    double safety = 0.5;
    std::string filter = "none";
    std::string output_dir;
    std::string output;
    int n = 64;
    std::string ladder = "32,64,128,256";
    std::string figure;
    bool full = false;
};

std::string default_output_dir() {
    if (const char* env = std::getenv("EISHEAT_OUTPUT_DIR"); env && *env) return env;
    return ".";
}

std::vector<int> parse_ladder(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int n = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(n);
        } catch (const std::exception&) {
            throw PreconditionError("bad ladder entry '" + item + "'");
        }
    }
    return out;
}

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream os(path);
    if (!os) throw PreconditionError("cannot write " + path.string());
    return os;
}

std::string echo(const Config& cfg, const char* command) {
    std::ostringstream os;
    os << "# command=" << command << ",scheme=" << cfg.scheme << ",c=" << format_parameter(cfg.c)
       << ",problem=" << cfg.problem << ",integrator=" << cfg.integrator
       << ",t_final=" << (cfg.t_final ? format_parameter(*cfg.t_final) : std::string("default"))
       << ",safety=" << format_parameter(cfg.safety) << ",filter=" << cfg.filter;
    return os.str();
}

IntegratorSpec integrator_of(const Config& cfg) {
    return IntegratorSpec{method_from_name(cfg.integrator), cfg.safety, std::nullopt};
}

void require_stable(const StencilOperator& op) {
    const auto scan = stability_scan(op);
    if (!scan.stable) {
        std::ostringstream os;
        os << "unstable: scheme " << scheme_name(op.scheme()) << " with c = " << format_parameter(op.c())
           << " has max Re(lambda) = " << scan.max_real_part << " > tolerance " << scan.tolerance
           << " (max |Im(lambda)| = " << scan.max_abs_imag_part << ")";
        throw BlowUpError(os.str(), 0.0, 0);
    }
}

int cmd_run(const Config& cfg, std::ostream& out) {
    const SchemeId scheme = scheme_from_name(cfg.scheme);
    const Problem problem = problem_from_name(cfg.problem);
    const auto filter = parse_filter(cfg.filter);
    const double t_final = cfg.t_final.value_or(1.0);
    require_stable(build_operator(scheme, cfg.n, cfg.c));
    const auto res = solve(scheme, cfg.c, problem, integrator_of(cfg), t_final, cfg.n, filter);

    const fs::path path = cfg.output.empty()
                              ? fs::path(cfg.output_dir) / ("run_" + cfg.scheme + "_c" + format_parameter(cfg.c) +
                                                            "_N" + std::to_string(cfg.n) + ".csv")
                              : fs::path(cfg.output);
    auto os = open_output(path);
    os << echo(cfg, "run") << ",n=" << cfg.n << ",steps=" << res.steps << '\n';
    os << std::setprecision(17);
    if (problem.complex_valued) {
        os << "x,re_v,im_v,re_exact,im_exact,abs_error\n";
        for (std::size_t i = 0; i < res.numerical.size(); ++i) {
            os << res.grid.x(i) << ',' << res.numerical[i].real() << ',' << res.numerical[i].imag() << ','
               << res.exact[i].real() << ',' << res.exact[i].imag() << ','
               << std::abs(res.numerical[i] - res.exact[i]) << '\n';
        }
    } else {
        os << "x,v,exact,error\n";
        for (std::size_t i = 0; i < res.numerical.size(); ++i) {
            os << res.grid.x(i) << ',' << res.numerical[i].real() << ',' << res.exact[i].real() << ','
               << res.numerical[i].real() - res.exact[i].real() << '\n';
        }
    }
    out << std::setprecision(17) << "error = " << res.error << "\nsteps = " << res.steps << "\ndt = " << res.dt
        << "\nwrote " << path.string() << '\n';
    return kOk;
}

int report_curves(const std::vector<FigureCurve>& curves, const fs::path& dir, const std::string& summary_name,
                  std::ostream& out) {
    bool ok = true;
    for (const auto& curve : curves) {
        auto os = open_output(dir / curve.file_name);
        write_curve_csv(os, curve.report);
        out << curve.file_name << ": ";
        if (curve.report.ok) {
            out << "fitted order " << std::fixed << std::setprecision(3) << curve.report.fitted_order
                << std::defaultfloat << '\n';
        } else {
            out << "FAILED: " << curve.report.failure << '\n';
            ok = false;
        }
    }
    auto os = open_output(dir / summary_name);
    write_summary_csv(os, curves);
    out << "wrote " << (dir / summary_name).string() << '\n';
    return ok ? kOk : kNumericalFailure;
}

int cmd_converge(const Config& cfg, std::ostream& out) {
    ConvergenceSpec spec;
    spec.scheme = scheme_from_name(cfg.scheme);
    spec.c = cfg.c;
    spec.problem = problem_from_name(cfg.problem);
    spec.integrator = integrator_of(cfg);
    spec.t_final = cfg.t_final.value_or(1.0);
    spec.ladder = parse_ladder(cfg.ladder);
    spec.filter = parse_filter(cfg.filter);
    const auto report = run_convergence(spec);
    std::string name = "converge_" + cfg.scheme + "_c" + format_parameter(cfg.c);
    if (spec.filter) name += "_" + filter_name(spec.filter);
    return report_curves({{name + ".csv", report}}, cfg.output_dir, name + "_summary.csv", out);
}

int cmd_figure(const Config& cfg, std::ostream& out) {
    FigureOptions opts;
    opts.ladder = cfg.full ? full_ladder() : parse_ladder(cfg.ladder);
    opts.t_final = cfg.t_final;
    opts.safety = cfg.safety;
    const auto curves = reproduce_figure(cfg.figure, opts);
    return report_curves(curves, cfg.output_dir, "fig" + cfg.figure + "_summary.csv", out);
}

int cmd_filter_study(const Config& cfg, std::ostream& out) {
    std::vector<FigureCurve> curves;
    const SchemeId scheme = scheme_from_name(cfg.scheme);
    const Problem problem = problem_from_name(cfg.problem);
    for (const char* f : {"none", "spectral", "local"}) {
        ConvergenceSpec spec{scheme,      cfg.c,          problem,         integrator_of(cfg),
                             cfg.t_final.value_or(1.0), parse_ladder(cfg.ladder), parse_filter(f)};
        curves.push_back({"filter_" + cfg.scheme + "_c" + format_parameter(cfg.c) + "_" + f + ".csv",
                          run_convergence(spec)});
    }
    return report_curves(curves, cfg.output_dir, "filter_" + cfg.scheme + "_summary.csv", out);
}

int cmd_symbol(const Config& cfg, std::ostream& out) {
    const auto op = build_operator(scheme_from_name(cfg.scheme), cfg.n, cfg.c);
    const auto rows = symbol_scan(op);
    const auto rep = stability_scan(op);
    const fs::path path = cfg.output.empty() ? fs::path(cfg.output_dir) / ("symbol_" + cfg.scheme + "_c" +
                                                                           format_parameter(cfg.c) + "_N" +
                                                                           std::to_string(cfg.n) + ".csv")
                                             : fs::path(cfg.output);
    auto os = open_output(path);
    os << echo(cfg, "symbol") << ",n=" << cfg.n << '\n';
    write_symbol_scan_csv(os, rows);
    out << std::setprecision(6) << "stable=" << (rep.stable ? "true" : "false") << " max_re=" << rep.max_real_part
        << " max_abs_im=" << rep.max_abs_imag_part << " tolerance=" << rep.tolerance;
    if (op.period() == 2) out << " min_cos_angle=" << rep.min_cos_angle << " max_cos_angle=" << rep.max_cos_angle;
    out << " max_eigenvector_condition=" << rep.max_eigenvector_condition << '\n'
        << "wrote " << path.string() << '\n';
    return kOk;
}

int cmd_cost_table(std::ostream& out) {
    struct Entry {
        const char* label;
        SchemeId id;
        double c;
    };
    // c values only matter through which taps vanish; 0.3 stands for a generic c.
    const Entry entries[] = {
        {"standard 2nd order", SchemeId::Std2, 0.0},
        {"standard 4th order", SchemeId::Std4, 0.0},
        {"standard 6th order", SchemeId::Std6, 0.0},
        {"2-point block 3rd order", SchemeId::Block2_3rd, -0.25},
        {"3-point block 3rd order", SchemeId::Block3_3rd, 1.340},
        {"3-point block 5th order", SchemeId::Block3_5th, -0.385},
        {"3-point block 4th order compact", SchemeId::Block3_5th, 1.0},
    };
    out << std::left << std::setw(34) << "scheme" << std::setw(16) << "points/side" << std::setw(10) << "+"
        << "x\n";
    for (const auto& e : entries) {
        const auto cost = stencil_cost(build_operator(e.id, 32, e.c));
        out << std::left << std::setw(34) << e.label << std::setw(16) << cost.points_outside_block << std::setw(10)
            << cost.adds.mixed() << cost.mults.mixed() << '\n';
    }
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Config cfg;
    cfg.output_dir = default_output_dir();

    CLI::App app{"Block finite-difference schemes for the periodic heat equation"};
    app.require_subcommand(1);

    auto scheme_opts = [&cfg](CLI::App* sub) {
        sub->add_option("--scheme", cfg.scheme, "perturbed, block2, block3-low, block3-high, std2, std4, std6")
            ->capture_default_str();
        sub->add_option("--c", cfg.c, "scheme parameter c")->capture_default_str();
    };
    auto run_opts = [&cfg](CLI::App* sub) {
        sub->add_option("--problem", cfg.problem, "decaying-cosine, exp-cos or mode:<omega>")->capture_default_str();
        sub->add_option("--integrator", cfg.integrator, "euler, rk4 or rk6")->capture_default_str();
        sub->add_option("--t", cfg.t_final, "final time");
        sub->add_option("--safety", cfg.safety, "fraction of the stability limit used for dt")
            ->capture_default_str();
        sub->add_option("--output-dir", cfg.output_dir, "directory for CSV output (env EISHEAT_OUTPUT_DIR)");
    };
    auto filter_opt = [&cfg](CLI::App* sub) {
        sub->add_option("--filter", cfg.filter, "none, spectral[:cutoff] or local[:order[:support]]")
            ->capture_default_str();
    };

    auto* run_cmd = app.add_subcommand("run", "single evolution, writes x,v,exact,error");
    scheme_opts(run_cmd);
    run_opts(run_cmd);
    filter_opt(run_cmd);
    run_cmd->add_option("--n", cfg.n, "resolution N")->capture_default_str();
    run_cmd->add_option("--output", cfg.output, "CSV path");

    auto* converge_cmd = app.add_subcommand("converge", "convergence study over a ladder of N");
    scheme_opts(converge_cmd);
    run_opts(converge_cmd);
    filter_opt(converge_cmd);
    converge_cmd->add_option("--ladder", cfg.ladder, "comma separated N values")->capture_default_str();

    auto* figure_cmd = app.add_subcommand("figure", "regenerate the data behind a convergence figure");
    figure_cmd->add_option("--id", cfg.figure, "1a, 1b, 2a, 2b or 3")->required();
    figure_cmd->add_option("--ladder", cfg.ladder, "comma separated N values")->capture_default_str();
    figure_cmd->add_flag("--full", cfg.full, "use N = 32..1024");
    figure_cmd->add_option("--t", cfg.t_final, "override the final time");
    figure_cmd->add_option("--safety", cfg.safety, "fraction of the stability limit used for dt")
        ->capture_default_str();
    figure_cmd->add_option("--output-dir", cfg.output_dir, "directory for CSV output");

    auto* symbol_cmd = app.add_subcommand("symbol", "Fourier symbol scan and stability verdict");
    scheme_opts(symbol_cmd);
    symbol_cmd->add_option("--n", cfg.n, "resolution N")->capture_default_str();
    symbol_cmd->add_option("--output", cfg.output, "CSV path");
    symbol_cmd->add_option("--output-dir", cfg.output_dir, "directory for CSV output");

    auto* filter_cmd = app.add_subcommand("filter-study", "unfiltered vs spectral vs local filter");
    scheme_opts(filter_cmd);
    run_opts(filter_cmd);
    filter_cmd->add_option("--ladder", cfg.ladder, "comma separated N values")->capture_default_str();

    app.add_subcommand("cost-table", "operation counts per point for every scheme");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParseError;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(cfg, out);
        if (converge_cmd->parsed()) return cmd_converge(cfg, out);
        if (figure_cmd->parsed()) return cmd_figure(cfg, out);
        if (symbol_cmd->parsed()) return cmd_symbol(cfg, out);
        if (filter_cmd->parsed()) return cmd_filter_study(cfg, out);
        return cmd_cost_table(out);
    } catch (const BlowUpError& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kPreconditionError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kPreconditionError;
    }
}

}  // namespace eis::cli
