#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eisheat/analysis.hpp"
#include "eisheat/operators.hpp"
#include "eisheat/postprocess.hpp"
#include "eisheat/problems.hpp"
#include "eisheat/timestep.hpp"

namespace eis {

/// Single evolution of a problem on one grid.
struct SolveResult {
    BlockGrid grid;
    std::vector<cplx> numerical;
    std::vector<cplx> exact;
    long steps = 0;
    double dt = 0.0;
    double error = 0.0;  ///< l2_norm(numerical - exact)
};

/// Evolves `problem` to t_final with the scheme on its N grid; the optional
/// filter is applied once to the final state.
SolveResult solve(SchemeId scheme, double c, const Problem& problem, const IntegratorSpec& integrator,
                  double t_final, int resolution, const std::optional<FilterSpec>& filter = std::nullopt);

struct ConvergenceRow {
    int resolution = 0;
    std::size_t points = 0;
    double dt = 0.0;
    long steps = 0;
    double error = 0.0;
    bool used_in_fit = true;
};

struct ConvergenceReport {
    SchemeId scheme = SchemeId::Std2;
    double c = 0.0;
    std::string problem;
    Method integrator = Method::RK4;
    double t_final = 0.0;
    std::string filter = "none";
    std::vector<ConvergenceRow> rows;
    /// -slope of log10(error) against log10(M) over rows used in the fit.
    double fitted_order = 0.0;
    double fit_residual = 0.0;

    bool ok = true;
    std::optional<StabilityReport> instability;  ///< set when the stability scan rejected the scheme
    std::string failure;                         ///< diagnostic when !ok
};

struct ConvergenceSpec {
    SchemeId scheme = SchemeId::Block2_3rd;
    double c = 0.0;
    Problem problem = problem_exp_cos();
    IntegratorSpec integrator{};
    double t_final = 1.0;
    std::vector<int> ladder{32, 64, 128, 256};
    std::optional<FilterSpec> filter;
    /// Rows whose error falls below this are kept in the report but left out of the fit.
    double roundoff_floor = 1e-12;
};

ConvergenceReport run_convergence(const ConvergenceSpec& spec);
ConvergenceReport run_convergence(SchemeId scheme, double c, const Problem& problem, const IntegratorSpec& integrator,
                                  double t_final, const std::vector<int>& ladder);

/// run_convergence with the filter applied once after the final step.
ConvergenceReport filtered_convergence(SchemeId scheme, double c, const Problem& problem, const FilterSpec& filter,
                                       const std::vector<int>& ladder, const IntegratorSpec& integrator = {},
                                       double t_final = 1.0);

/// Fitted order using only rows [first, end).
double fitted_order_from(const ConvergenceReport& report, std::size_t first);

/// Order of the discrete-norm-weighted error vs the truncation-error energy bound.
struct ErrorBoundReport {
    std::vector<double> errors;
    std::vector<double> bounds;
    double growth_rate = 0.0;       ///< alpha of the semi-bounded estimate
    double conditioning = 1.0;      ///< eigenvector-matrix condition factor applied to the bound
    double error_order = 0.0;
    double bound_order = 0.0;
    double order_gap = 0.0;         ///< error_order - bound_order
    bool holds = false;
};

/// Largest truncation-error norm over the time interval, per resolution of the report.
OrderEstimate max_truncation_over_time(const ConvergenceReport& report, const Problem& problem, int samples = 5);

/// Checks ||E|| <= K (e^{alpha t} - 1)/alpha max ||T_e|| at every resolution
/// (t max ||T_e|| when alpha <= 0).
ErrorBoundReport error_bound_check(const ConvergenceReport& report, const OrderEstimate& truncation);

struct FigureOptions {
    std::vector<int> ladder{32, 64, 128, 256};
    std::optional<double> t_final;
    double safety = 0.5;
};

/// Full ladder used when the desk-scale default is not enough.
std::vector<int> full_ladder();

struct FigureCurve {
    std::string file_name;
    ConvergenceReport report;
};

/// figure_id in {1a, 1b, 2a, 2b, 3}.
std::vector<FigureCurve> reproduce_figure(const std::string& figure_id, const FigureOptions& options = {});
std::vector<std::string> figure_ids();

void write_curve_csv(std::ostream& os, const ConvergenceReport& report);
void write_summary_csv(std::ostream& os, const std::vector<FigureCurve>& curves);

/// "0", "0.5", "-0.25", "0.16666666666666666".
std::string format_parameter(double c);

}  // namespace eis
