#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "eisheat/grid.hpp"
#include "eisheat/operators.hpp"

namespace eis {

/// Companion wavenumber nu of omega on an (N+1)-block grid: indistinguishable
/// from omega at block starts, sign-flipped at half nodes.
int alias_wavenumber(int omega, int resolution);

/// The wavenumbers of a block-periodic operator: one per block of `period` nodes.
std::vector<int> symbol_wavenumbers(const StencilOperator& op);

/// Fourier symbol of a block-periodic operator.
///
/// Acting on v_i = a_{i mod p} e^{i omega x_i} the operator returns
/// (S a)_{i mod p} e^{i omega x_i}; `matrix` is that p x p matrix S.
/// Eigenvalues are sorted by decreasing real part, so for consistent schemes
/// the first one is the smooth branch near -omega^2. Eigenvector columns are
/// scaled so that |a|^2 = p.
struct BlockSymbol {
    int omega = 0;
    std::optional<int> nu;  ///< set for two-point block grids
    Eigen::MatrixXcd matrix;
    Eigen::VectorXcd eigenvalues;
    Eigen::MatrixXcd eigenvectors;

    /// For p = 2: coefficients (alpha, beta) of eigenvector k in the
    /// {e^{i omega x}, e^{i nu x}} basis, normalized |alpha|^2 + |beta|^2 = 1.
    std::pair<cplx, cplx> alias_coefficients(int k) const;
};

BlockSymbol numeric_block_symbol(const StencilOperator& op, int omega);

/// Closed-form eigensystem of the two-point block scheme.
struct Block2Eigensystem {
    double q1 = 0.0;  ///< smooth branch, -omega^2 + O(h^2)
    double q2 = 0.0;  ///< stiff branch, -(4 - 8c)/(h/2)^2 + O(1)
    double delta = 0.0;
    cplx alpha1, beta1, alpha2, beta2;
    /// The eigenvector formulas are singular (omega = 0 or c = 0); the
    /// coefficients were taken from the numeric symbol instead.
    bool eigenvector_fallback = false;
};

Block2Eigensystem closed_form_block2_eigs(double c, int omega, const BlockGrid& grid);

struct StabilityReport {
    double max_real_part = 0.0;
    double max_abs_imag_part = 0.0;
    double tolerance = 0.0;
    /// |<psi_1, psi_2>| / (|psi_1| |psi_2|), min and max over omega (two-point blocks only).
    double min_cos_angle = 0.0;
    double max_cos_angle = 0.0;
    /// Largest 2-norm condition number of the per-omega eigenvector matrix.
    double max_eigenvector_condition = 1.0;
    bool stable = false;
};

/// Scans every wavenumber. Stable when all eigenvalues satisfy
/// Re(lambda) <= 1e-10 (m/h)^2 + sigma, where sigma bounds the zeroth-order
/// (reaction) part of the rows; sigma is zero for every consistent scheme.
StabilityReport stability_scan(const StencilOperator& op);
StabilityReport stability_scan(SchemeId id, double c, const BlockGrid& grid);

struct SymbolScanRow {
    int omega = 0;
    std::vector<cplx> eigenvalues;
    double cos_angle = 0.0;  ///< NaN unless the period is two
};

std::vector<SymbolScanRow> symbol_scan(const StencilOperator& op);
/// Columns: omega, Re lambda_k..., Im lambda_k..., cos_angle.
void write_symbol_scan_csv(std::ostream& os, const std::vector<SymbolScanRow>& rows);

/// Largest |lambda| over all wavenumbers.
double max_symbol_magnitude(const StencilOperator& op);

struct OrderEstimate {
    double observed_order = 0.0;
    std::vector<int> resolutions;
    std::vector<double> residual_norms;
    bool dropped_coarsest = false;
    double fit_residual = 0.0;
};

/// Fits -slope of log(norm) vs log(points), points defaulting to the
/// resolutions; drops the coarsest point when it sits more than 10% off the
/// fit and at least four points remain.
OrderEstimate estimate_order(std::vector<int> resolutions, std::vector<double> norms,
                             std::vector<double> points = {});

using OperatorFactory = std::function<StencilOperator(int resolution)>;
using RealFunction = std::function<double(double)>;

/// Truncation error T = w_xx - Q w over a refinement ladder.
OrderEstimate truncation_order(const OperatorFactory& factory, const RealFunction& w, const RealFunction& w_xx,
                               const std::vector<int>& ladder);
OrderEstimate truncation_order(SchemeId id, double c, const std::vector<int>& ladder = {32, 64, 128, 256});

/// Same as truncation_order, one estimate per stencil row (node position in the block).
std::vector<OrderEstimate> truncation_order_by_row(const OperatorFactory& factory, const RealFunction& w,
                                                   const RealFunction& w_xx, const std::vector<int>& ladder);

/// Two-term small-h prediction of the two-point block solution started from
/// e^{i omega x}: the smooth mode with its (h/2)^2 decay correction plus the
/// aliased mode carried with amplitude -ic/(4-8c) (omega h/2)^3.
ComplexGridFunction modal_evolution_prediction(double c, int omega, double t, const BlockGrid& grid);

struct PerturbedModeReport {
    /// Nyquist-mode amplitude of the forced error, in the e^{iNx/2} sqrt(2pi) normalization.
    double amplitude = 0.0;
    /// (2/N)^2 c
    double predicted = 0.0;
    bool within_bound = false;
};

/// Evolves dE/dt = D+D- E + c(-1)^j from E = 0 and measures the Nyquist amplitude at t.
PerturbedModeReport perturbed_error_mode_check(double c, const BlockGrid& grid, double t);

}  // namespace eis
