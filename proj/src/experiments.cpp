#include "eisheat/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <ostream>

#include "eisheat/fit.hpp"

namespace eis {

namespace {

template <typename T>
T narrow(cplx z) {
    if constexpr (std::is_same_v<T, double>) {
        return z.real();
    } else {
        return z;
    }
}

template <typename T>
SolveResult solve_typed(const StencilOperator& op, const Problem& problem, const IntegratorSpec& integrator,
                        double t_final, const std::optional<FilterSpec>& filter) {
    const BlockGrid& grid = op.grid();
    const std::vector<double> xs = grid.coordinates();
    BasicGridFunction<T> v0(grid);
    for (std::size_t i = 0; i < xs.size(); ++i) v0[i] = narrow<T>(problem.exact(xs[i], 0.0));

    Forcing<T> forcing;
    if (problem.has_forcing()) {
        forcing = [&xs, &problem](double t, std::span<T> out) {
            for (std::size_t i = 0; i < xs.size(); ++i) out[i] = narrow<T>(problem.forcing(xs[i], t));
        };
    }
    const auto run = evolve<T>(op, forcing, v0, t_final, integrator);

    SolveResult res{grid, {}, {}, run.steps_taken, run.dt_used, 0.0};
    res.numerical.assign(run.final_state.values().begin(), run.final_state.values().end());
    if (filter) {
        res.numerical = apply_filter(res.numerical, *filter);
        if constexpr (std::is_same_v<T, double>) {
            for (auto& z : res.numerical) z = z.real();
        }
    }
    res.exact.resize(xs.size());
    std::vector<cplx> diff(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        res.exact[i] = narrow<T>(problem.exact(xs[i], t_final));
        diff[i] = res.numerical[i] - res.exact[i];
    }
    res.error = l2_norm<cplx>(diff);
    return res;
}

}  // namespace

SolveResult solve(SchemeId scheme, double c, const Problem& problem, const IntegratorSpec& integrator,
                  double t_final, int resolution, const std::optional<FilterSpec>& filter) {
    const StencilOperator op = build_operator(scheme, resolution, c);
    if (problem.complex_valued) return solve_typed<cplx>(op, problem, integrator, t_final, filter);
    return solve_typed<double>(op, problem, integrator, t_final, filter);
}

double fitted_order_from(const ConvergenceReport& report, std::size_t first) {
    std::vector<double> pts;
    std::vector<double> errs;
    for (std::size_t i = first; i < report.rows.size(); ++i) {
        if (!report.rows[i].used_in_fit) continue;
        pts.push_back(static_cast<double>(report.rows[i].points));
        errs.push_back(report.rows[i].error);
    }
    if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    return -fit_loglog(pts, errs).slope;
}

ConvergenceReport run_convergence(const ConvergenceSpec& spec) {
    if (spec.ladder.size() < 3) throw PreconditionError("convergence ladder needs at least three resolutions");
    if (!std::is_sorted(spec.ladder.begin(), spec.ladder.end()) ||
        std::adjacent_find(spec.ladder.begin(), spec.ladder.end()) != spec.ladder.end()) {
        throw PreconditionError("convergence ladder must be strictly increasing");
    }
    ConvergenceReport report;
    report.scheme = spec.scheme;
    report.c = spec.c;
    report.problem = spec.problem.name;
    report.integrator = spec.integrator.method;
    report.t_final = spec.t_final;
    report.filter = filter_name(spec.filter);

    // Refuse to produce slopes from an unstable scheme.
    for (int n : spec.ladder) {
        const auto scan = stability_scan(build_operator(spec.scheme, n, spec.c));
        if (!scan.stable) {
            report.ok = false;
            report.instability = scan;
            report.failure = "scheme " + std::string(scheme_name(spec.scheme)) + " with c = " +
                             format_parameter(spec.c) + " is unstable at N = " + std::to_string(n) +
                             ": max Re(lambda) = " + std::to_string(scan.max_real_part) +
                             " exceeds tolerance " + std::to_string(scan.tolerance);
            report.fitted_order = std::numeric_limits<double>::quiet_NaN();
            return report;
        }
    }

    std::vector<std::future<SolveResult>> jobs;
    jobs.reserve(spec.ladder.size());
    for (int n : spec.ladder) {
        jobs.push_back(std::async(std::launch::async, [&spec, n] {
            return solve(spec.scheme, spec.c, spec.problem, spec.integrator, spec.t_final, n, spec.filter);
        }));
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        try {
            const SolveResult r = jobs[i].get();
            report.rows.push_back({spec.ladder[i], r.grid.size(), r.dt, r.steps, r.error, true});
        } catch (const BlowUpError& e) {
            report.ok = false;
            report.failure = "N = " + std::to_string(spec.ladder[i]) + ": " + e.what();
        }
    }
    if (!report.ok) {
        report.fitted_order = std::numeric_limits<double>::quiet_NaN();
        return report;
    }

    std::vector<double> pts;
    std::vector<double> errs;
    for (auto& row : report.rows) {
        row.used_in_fit = row.error >= spec.roundoff_floor && row.error > 0.0;
        if (!row.used_in_fit) continue;
        pts.push_back(static_cast<double>(row.points));
        errs.push_back(row.error);
    }
    if (pts.size() < 2) {
        report.fitted_order = std::numeric_limits<double>::quiet_NaN();
        report.ok = false;
        report.failure = "fewer than two errors above the round-off floor";
        return report;
    }
    const auto fit = fit_loglog(pts, errs);
    report.fitted_order = -fit.slope;
    report.fit_residual = fit.rms_residual;
    return report;
}

ConvergenceReport run_convergence(SchemeId scheme, double c, const Problem& problem, const IntegratorSpec& integrator,
                                  double t_final, const std::vector<int>& ladder) {
    ConvergenceSpec spec{scheme, c, problem, integrator, t_final, ladder, std::nullopt};
    return run_convergence(spec);
}

ConvergenceReport filtered_convergence(SchemeId scheme, double c, const Problem& problem, const FilterSpec& filter,
                                       const std::vector<int>& ladder, const IntegratorSpec& integrator,
                                       double t_final) {
    ConvergenceSpec spec{scheme, c, problem, integrator, t_final, ladder, filter};
    return run_convergence(spec);
}

OrderEstimate max_truncation_over_time(const ConvergenceReport& report, const Problem& problem, int samples) {
    if (samples < 1) throw PreconditionError("need at least one time sample");
    std::vector<int> ns;
    std::vector<double> pts;
    std::vector<double> norms;
    for (const auto& row : report.rows) {
        const StencilOperator op = build_operator(report.scheme, row.resolution, report.c);
        const auto& grid = op.grid();
        double worst = 0.0;
        for (int k = 0; k < samples; ++k) {
            const double tau = samples == 1 ? 0.0 : report.t_final * k / (samples - 1);
            ComplexGridFunction u(grid);
            for (std::size_t i = 0; i < grid.size(); ++i) u[i] = problem.exact(grid.x(i), tau);
            const auto qu = op.apply(u);
            std::vector<cplx> te(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) te[i] = problem.exact_xx(grid.x(i), tau) - qu[i];
            worst = std::max(worst, l2_norm<cplx>(te));
        }
        ns.push_back(row.resolution);
        pts.push_back(static_cast<double>(grid.size()));
        norms.push_back(worst);
    }
    return estimate_order(std::move(ns), std::move(norms), std::move(pts));
}

ErrorBoundReport error_bound_check(const ConvergenceReport& report, const OrderEstimate& truncation) {
    if (truncation.residual_norms.size() != report.rows.size()) {
        throw PreconditionError("truncation estimate and report cover different resolutions");
    }
    ErrorBoundReport out;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        if (truncation.resolutions[i] != report.rows[i].resolution) {
            throw PreconditionError("truncation estimate and report cover different resolutions");
        }
        const auto scan = stability_scan(build_operator(report.scheme, report.rows[i].resolution, report.c));
        out.growth_rate = std::max(out.growth_rate, scan.max_real_part);
        out.conditioning = std::max(out.conditioning, scan.max_eigenvector_condition);
    }
    const double t = report.t_final;
    const double alpha = out.growth_rate;
    const double factor = alpha > 1e-14 ? std::expm1(alpha * t) / alpha : t;
    out.holds = true;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        out.errors.push_back(report.rows[i].error);
        out.bounds.push_back(out.conditioning * factor * truncation.residual_norms[i]);
        if (out.errors.back() > out.bounds.back()) out.holds = false;
    }
    out.error_order = report.fitted_order;
    out.bound_order = truncation.observed_order;
    out.order_gap = out.error_order - out.bound_order;
    return out;
}

std::vector<int> full_ladder() { return {32, 64, 128, 256, 512, 1024}; }

std::vector<std::string> figure_ids() { return {"1a", "1b", "2a", "2b", "3"}; }

std::string format_parameter(double c) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, c);
    return ec == std::errc() ? std::string(buf, ptr) : std::to_string(c);
}

std::vector<FigureCurve> reproduce_figure(const std::string& figure_id, const FigureOptions& options) {
    struct Curve {
        SchemeId scheme;
        double c;
        std::optional<FilterSpec> filter;
    };
    Problem problem = problem_exp_cos();
    Method method = Method::RK4;
    double t_final = 1.0;
    std::vector<Curve> curves;
    if (figure_id == "1a") {
        problem = problem_decaying_cosine();
        method = Method::ForwardEuler;
        t_final = kTwoPi;
        for (double c : {0.0, 0.5, 1.0}) curves.push_back({SchemeId::Perturbed2_20, c, std::nullopt});
    } else if (figure_id == "1b") {
        for (double c : {0.0, 1.0 / 6, -1.0 / 6, -0.25}) curves.push_back({SchemeId::Block2_3rd, c, std::nullopt});
    } else if (figure_id == "2a") {
        for (double c : {0.0, 1.340}) curves.push_back({SchemeId::Block3_3rd, c, std::nullopt});
    } else if (figure_id == "2b") {
        method = Method::RK6;
        for (double c : {0.0, -0.385}) curves.push_back({SchemeId::Block3_5th, c, std::nullopt});
    } else if (figure_id == "3") {
        curves.push_back({SchemeId::Block2_3rd, -0.25, std::nullopt});
        curves.push_back({SchemeId::Block2_3rd, -0.25, FilterSpec::spectral()});
        curves.push_back({SchemeId::Block2_3rd, -0.25, FilterSpec::local()});
    } else {
        throw PreconditionError("unknown figure '" + figure_id + "' (expected 1a, 1b, 2a, 2b or 3)");
    }
    if (options.t_final) t_final = *options.t_final;

    std::vector<FigureCurve> out;
    for (const auto& curve : curves) {
        ConvergenceSpec spec{curve.scheme, curve.c, problem, IntegratorSpec{method, options.safety, std::nullopt},
                             t_final, options.ladder, curve.filter};
        std::string name = "fig" + figure_id + "_c" + format_parameter(curve.c);
        if (figure_id == "3") name += "_" + filter_name(curve.filter);
        out.push_back({name + ".csv", run_convergence(spec)});
    }
    return out;
}

void write_curve_csv(std::ostream& os, const ConvergenceReport& r) {
    const auto old = os.precision(17);
    os << "# scheme=" << scheme_name(r.scheme) << ",c=" << format_parameter(r.c) << ",problem=" << r.problem
       << ",integrator=" << method_name(r.integrator) << ",t_final=" << r.t_final << ",filter=" << r.filter << '\n';
    os << "N,M,dt,error,log10M,log10error\n";
    for (const auto& row : r.rows) {
        os << row.resolution << ',' << row.points << ',' << row.dt << ',' << row.error << ','
           << std::log10(static_cast<double>(row.points)) << ',' << std::log10(row.error) << '\n';
    }
    os.precision(old);
}

void write_summary_csv(std::ostream& os, const std::vector<FigureCurve>& curves) {
    const auto old = os.precision(17);
    os << "file,scheme,c,problem,integrator,t_final,filter,fitted_order,fit_residual,status\n";
    for (const auto& [file, r] : curves) {
        os << file << ',' << scheme_name(r.scheme) << ',' << format_parameter(r.c) << ',' << r.problem << ','
           << method_name(r.integrator) << ',' << r.t_final << ',' << r.filter << ',' << r.fitted_order << ','
           << r.fit_residual << ',' << (r.ok ? "ok" : "failed") << '\n';
    }
    os.precision(old);
}

}  // namespace eis
