#include "eisheat/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "eisheat/fit.hpp"
#include "eisheat/timestep.hpp"

namespace eis {

using namespace std::complex_literals;

int alias_wavenumber(int omega, int resolution) {
    if (std::abs(omega) > resolution / 2) {
        throw PreconditionError("wavenumber " + std::to_string(omega) + " outside [-N/2, N/2]");
    }
    return omega > 0 ? omega - (resolution + 1) : omega + (resolution + 1);
}

std::vector<int> symbol_wavenumbers(const StencilOperator& op) {
    const int blocks = static_cast<int>(op.grid().size() / op.period());
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(blocks));
    for (int w = -(blocks - 1) / 2; w <= blocks / 2; ++w) out.push_back(w);
    return out;
}

std::pair<cplx, cplx> BlockSymbol::alias_coefficients(int k) const {
    if (eigenvectors.rows() != 2) throw PreconditionError("alias coefficients exist for two-point blocks only");
    const cplx a0 = eigenvectors(0, k);
    const cplx a1 = eigenvectors(1, k);
    return {0.5 * (a0 + a1), 0.5 * (a0 - a1)};
}

BlockSymbol numeric_block_symbol(const StencilOperator& op, int omega) {
    const auto p = static_cast<Eigen::Index>(op.period());
    const double s = op.grid().sub_spacing();
    BlockSymbol sym;
    sym.omega = omega;
    if (op.grid().block_size() == 2) sym.nu = alias_wavenumber(omega, op.grid().resolution());
    sym.matrix = Eigen::MatrixXcd::Zero(p, p);
    const auto rows = op.rows();
    for (Eigen::Index r = 0; r < p; ++r) {
        const auto& row = rows[static_cast<std::size_t>(r)];
        for (const auto& tap : row.taps) {
            Eigen::Index col = (r + tap.offset) % p;
            if (col < 0) col += p;
            sym.matrix(r, col) += op.scale() * tap.coefficient * std::exp(1i * (omega * tap.offset * s));
        }
        sym.matrix(r, r) += row.shift;
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(sym.matrix, true);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return solver.eigenvalues()(a).real() > solver.eigenvalues()(b).real();
    });
    sym.eigenvalues.resize(p);
    sym.eigenvectors.resize(p, p);
    for (Eigen::Index k = 0; k < p; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        sym.eigenvalues(k) = solver.eigenvalues()(src);
        Eigen::VectorXcd v = solver.eigenvectors().col(src);
        v *= std::sqrt(static_cast<double>(p)) / v.norm();
        sym.eigenvectors.col(k) = v;
    }
    return sym;
}

Block2Eigensystem closed_form_block2_eigs(double c, int omega, const BlockGrid& grid) {
    if (grid.block_size() != 2) throw PreconditionError("closed-form eigensystem needs a two-point block grid");
    if (!(std::abs(c) < 0.5)) throw PreconditionError("closed-form eigensystem requires |c| < 1/2");
    const double s = grid.sub_spacing();
    const double th = s * omega;
    const double c1 = std::cos(th);
    const double c2 = std::cos(2 * th);
    const double c4 = std::cos(4 * th);

    Block2Eigensystem e;
    const double radicand = 2 * c * c * c4 + 38 * c * c + 8 * (c - 1) * (3 * c - 1) * c2 - 32 * c + 8;
    e.delta = std::sqrt(std::max(radicand, 0.0));
    e.q1 = (-4 + 2 * c * (c2 + 3) + e.delta) / (2 * s * s);
    e.q2 = (-4 + 2 * c * (c2 + 3) - e.delta) / (2 * s * s);

    const double d = 2 * std::sin(th) + std::sin(2 * th);
    if (c == 0.0 || std::abs(d) < 1e-14) {
        const auto sym = numeric_block_symbol(build_block2(grid, c), omega);
        std::tie(e.alpha1, e.beta1) = sym.alias_coefficients(0);
        std::tie(e.alpha2, e.beta2) = sym.alias_coefficients(1);
        e.eigenvector_fallback = true;
        return e;
    }
    const double common = 4 * (c * (7 * c - 8) + 2) * c2 + (35 * c - 32) * c + 8 + c * c * c4;
    const double x1 = common + 4 * (2 * c - 1) * e.delta * c1;
    const double x2 = common + 4 * (1 - 2 * c) * e.delta * c1;
    const double a1 = 1.0 / std::sqrt(1.0 + x1 / (2 * c * c * d * d));
    e.alpha1 = a1;
    e.beta1 = -1i * ((8 * c - 4) * c1 + e.delta) / (2 * c * d) * a1;
    const double b2 = 1.0 / std::sqrt(1.0 + 2 * c * c * d * d / x2);
    e.beta2 = b2;
    e.alpha2 = -2i * c * d / ((4 - 8 * c) * c1 + e.delta) * b2;
    return e;
}

namespace {

// Bound on the zeroth-order part of the rows (|row sum|); rows that annihilate
// constants up to round-off contribute nothing.
double reaction_bound(const StencilOperator& op) {
    double sigma = 0.0;
    for (const auto& row : op.rows()) {
        double sum = 0.0;
        double mag = 0.0;
        for (const auto& tap : row.taps) {
            sum += tap.coefficient;
            mag += std::abs(tap.coefficient);
        }
        if (std::abs(sum) <= 1e-12 * mag) sum = 0.0;
        sigma = std::max(sigma, std::abs(op.scale() * sum + row.shift));
    }
    return sigma;
}

double cos_angle(const Eigen::MatrixXcd& vecs) {
    const auto v1 = vecs.col(0);
    const auto v2 = vecs.col(1);
    return std::abs(v1.dot(v2)) / (v1.norm() * v2.norm());
}

}  // namespace

StabilityReport stability_scan(const StencilOperator& op) {
    StabilityReport rep;
    const double s = op.grid().sub_spacing();
    rep.tolerance = 1e-10 / (s * s) + reaction_bound(op);
    rep.max_real_part = -std::numeric_limits<double>::infinity();
    rep.min_cos_angle = std::numeric_limits<double>::infinity();
    rep.max_cos_angle = 0.0;
    const bool pair = op.period() == 2;
    for (int w : symbol_wavenumbers(op)) {
        const auto sym = numeric_block_symbol(op, w);
        for (Eigen::Index k = 0; k < sym.eigenvalues.size(); ++k) {
            rep.max_real_part = std::max(rep.max_real_part, sym.eigenvalues(k).real());
            rep.max_abs_imag_part = std::max(rep.max_abs_imag_part, std::abs(sym.eigenvalues(k).imag()));
        }
        if (op.period() >= 2) {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sym.eigenvectors);
            const auto& sv = svd.singularValues();
            const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                         : std::numeric_limits<double>::infinity();
            rep.max_eigenvector_condition = std::max(rep.max_eigenvector_condition, cond);
        }
        if (pair) {
            const double ca = cos_angle(sym.eigenvectors);
            rep.min_cos_angle = std::min(rep.min_cos_angle, ca);
            rep.max_cos_angle = std::max(rep.max_cos_angle, ca);
        }
    }
    if (!pair) {
        rep.min_cos_angle = std::numeric_limits<double>::quiet_NaN();
        rep.max_cos_angle = std::numeric_limits<double>::quiet_NaN();
    }
    rep.stable = rep.max_real_part <= rep.tolerance;
    return rep;
}

StabilityReport stability_scan(SchemeId id, double c, const BlockGrid& grid) {
    return stability_scan(build_operator(id, grid, c));
}

std::vector<SymbolScanRow> symbol_scan(const StencilOperator& op) {
    std::vector<SymbolScanRow> out;
    for (int w : symbol_wavenumbers(op)) {
        const auto sym = numeric_block_symbol(op, w);
        SymbolScanRow row;
        row.omega = w;
        row.eigenvalues.assign(sym.eigenvalues.data(), sym.eigenvalues.data() + sym.eigenvalues.size());
        row.cos_angle = op.period() == 2 ? cos_angle(sym.eigenvectors) : std::numeric_limits<double>::quiet_NaN();
        out.push_back(std::move(row));
    }
    return out;
}

void write_symbol_scan_csv(std::ostream& os, const std::vector<SymbolScanRow>& rows) {
    const std::size_t p = rows.empty() ? 0 : rows.front().eigenvalues.size();
    os << "omega";
    for (std::size_t k = 1; k <= p; ++k) os << ",re_lambda" << k;
    for (std::size_t k = 1; k <= p; ++k) os << ",im_lambda" << k;
    os << ",cos_angle\n";
    const auto old = os.precision(17);
    for (const auto& r : rows) {
        os << r.omega;
        for (const auto& l : r.eigenvalues) os << ',' << l.real();
        for (const auto& l : r.eigenvalues) os << ',' << l.imag();
        os << ',' << r.cos_angle << '\n';
    }
    os.precision(old);
}

double max_symbol_magnitude(const StencilOperator& op) {
    if (op.scheme() == SchemeId::Perturbed2_20) {
        const double h = op.grid().h();
        return 4.0 / (h * h) + std::abs(op.c());
    }
    double rho = 0.0;
    for (int w : symbol_wavenumbers(op)) {
        const auto sym = numeric_block_symbol(op, w);
        for (Eigen::Index k = 0; k < sym.eigenvalues.size(); ++k) rho = std::max(rho, std::abs(sym.eigenvalues(k)));
    }
    return rho;
}

namespace {

OrderEstimate fit_estimate(std::vector<int> resolutions, const std::vector<double>& points, std::vector<double> norms) {
    OrderEstimate est;
    auto fit = fit_loglog(points, norms);
    if (points.size() >= 4) {
        const double predicted = fit.intercept + fit.slope * std::log10(points.front());
        const double deviation = std::abs(std::pow(10.0, std::log10(norms.front()) - predicted) - 1.0);
        if (deviation > 0.1) {
            fit = fit_loglog(std::span(points).subspan(1), std::span(norms).subspan(1));
            est.dropped_coarsest = true;
        }
    }
    est.observed_order = -fit.slope;
    est.fit_residual = fit.rms_residual;
    est.resolutions = std::move(resolutions);
    est.residual_norms = std::move(norms);
    return est;
}

}  // namespace

OrderEstimate estimate_order(std::vector<int> resolutions, std::vector<double> norms, std::vector<double> points) {
    if (points.empty()) points.assign(resolutions.begin(), resolutions.end());
    return fit_estimate(std::move(resolutions), points, std::move(norms));
}

std::vector<OrderEstimate> truncation_order_by_row(const OperatorFactory& factory, const RealFunction& w,
                                                   const RealFunction& w_xx, const std::vector<int>& ladder) {
    if (ladder.size() < 2) throw PreconditionError("truncation order needs at least two resolutions");
    std::size_t period = 0;
    std::vector<std::vector<double>> norms;
    std::vector<double> points;
    for (int n : ladder) {
        const StencilOperator op = factory(n);
        const auto& grid = op.grid();
        if (period == 0) {
            period = op.period();
            norms.assign(period + 1, {});
        } else if (op.period() != period) {
            throw PreconditionError("operator period changes across the ladder");
        }
        const auto qw = op.apply(sample(grid, w));
        std::vector<std::vector<double>> parts(period);
        std::vector<double> all(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            all[i] = w_xx(grid.x(i)) - qw[i];
            parts[i % period].push_back(all[i]);
        }
        for (std::size_t r = 0; r < period; ++r) norms[r].push_back(l2_norm<double>(parts[r]));
        norms[period].push_back(l2_norm<double>(all));
        points.push_back(static_cast<double>(grid.size()));
    }
    std::vector<OrderEstimate> out;
    for (auto& series : norms) out.push_back(fit_estimate(ladder, points, series));
    return out;
}

OrderEstimate truncation_order(const OperatorFactory& factory, const RealFunction& w, const RealFunction& w_xx,
                               const std::vector<int>& ladder) {
    return truncation_order_by_row(factory, w, w_xx, ladder).back();
}

OrderEstimate truncation_order(SchemeId id, double c, const std::vector<int>& ladder) {
    const auto w = [](double x) { return std::exp(std::cos(x)); };
    const auto w_xx = [](double x) {
        const double sx = std::sin(x);
        return (sx * sx - std::cos(x)) * std::exp(std::cos(x));
    };
    return truncation_order([id, c](int n) { return build_operator(id, n, c); }, w, w_xx, ladder);
}

ComplexGridFunction modal_evolution_prediction(double c, int omega, double t, const BlockGrid& grid) {
    if (grid.block_size() != 2) throw PreconditionError("modal prediction needs a two-point block grid");
    if (!(std::abs(c) < 0.5)) throw PreconditionError("modal prediction requires |c| < 1/2");
    const double h = grid.h();
    if (std::pow(std::abs(omega), 3) * h > 1.0) {
        throw PreconditionError("modal prediction needs |omega|^3 h <= 1");
    }
    const int nu = alias_wavenumber(omega, grid.resolution());
    const double wh = omega * h / 2;
    const double decay = std::exp(-double(omega) * omega * t);
    const double smooth = decay * (1.0 + (1 + 4 * c) * omega * omega * t / (12 - 24 * c) * wh * wh);
    const cplx aliased = decay * (-1i * c / (4 - 8 * c)) * (wh * wh * wh);
    ComplexGridFunction v(grid);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = grid.x(i);
        v[i] = smooth * std::exp(1i * (omega * x)) + aliased * std::exp(1i * (nu * x));
    }
    return v;
}

PerturbedModeReport perturbed_error_mode_check(double c, const BlockGrid& grid, double t) {
    if (grid.block_size() != 1) throw PreconditionError("perturbed error-mode check needs a point grid");
    const auto dpdm = build_standard(grid, 2);
    const Forcing<double> forcing = [c](double, std::span<double> out) {
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = (j % 2 == 0) ? c : -c;
    };
    const auto res = evolve<double>(dpdm, forcing, GridFunction(grid), t, IntegratorSpec{});
    double nyquist = 0.0;
    for (std::size_t j = 0; j < res.final_state.size(); ++j) {
        nyquist += (j % 2 == 0 ? 1.0 : -1.0) * res.final_state[j];
    }
    nyquist /= static_cast<double>(res.final_state.size());
    PerturbedModeReport rep;
    rep.amplitude = std::abs(nyquist) / std::sqrt(kTwoPi);
    const double n = grid.resolution();
    rep.predicted = (2.0 / n) * (2.0 / n) * std::abs(c);
    rep.within_bound = rep.amplitude <= rep.predicted * 1.01;
    return rep;
}

}  // namespace eis
