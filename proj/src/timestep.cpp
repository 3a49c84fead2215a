#include "eisheat/timestep.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "eisheat/analysis.hpp"
#include "eisheat/fit.hpp"

namespace eis {

std::string_view method_name(Method m) {
    switch (m) {
        case Method::ForwardEuler: return "euler";
        case Method::RK4: return "rk4";
        case Method::RK6: return "rk6";
    }
    return "unknown";
}

Method method_from_name(std::string_view name) {
    for (Method m : {Method::ForwardEuler, Method::RK4, Method::RK6}) {
        if (method_name(m) == name) return m;
    }
    throw PreconditionError("unknown integrator '" + std::string(name) + "' (expected euler, rk4 or rk6)");
}

int method_order(Method m) {
    switch (m) {
        case Method::ForwardEuler: return 1;
        case Method::RK4: return 4;
        case Method::RK6: return 6;
    }
    return 0;
}

const ButcherTableau& tableau(Method m) {
    static const ButcherTableau euler{{{}}, {1.0}, {0.0}};
    static const ButcherTableau rk4{
        {{}, {0.5}, {0.0, 0.5}, {0.0, 0.0, 1.0}},
        {1.0 / 6, 1.0 / 3, 1.0 / 3, 1.0 / 6},
        {0.0, 0.5, 0.5, 1.0},
    };
    // Butcher's seven-stage sixth-order method.
    static const ButcherTableau rk6{
        {
            {},
            {1.0 / 3},
            {0.0, 2.0 / 3},
            {1.0 / 12, 1.0 / 3, -1.0 / 12},
            {-1.0 / 16, 9.0 / 8, -3.0 / 16, -3.0 / 8},
            {0.0, 9.0 / 8, -3.0 / 8, -3.0 / 4, 1.0 / 2},
            {9.0 / 44, -9.0 / 11, 63.0 / 44, 18.0 / 11, 0.0, -16.0 / 11},
        },
        {11.0 / 120, 0.0, 27.0 / 40, 27.0 / 40, -4.0 / 15, -4.0 / 15, 11.0 / 120},
        {0.0, 1.0 / 3, 2.0 / 3, 1.0 / 3, 1.0 / 2, 1.0 / 2, 1.0},
    };
    switch (m) {
        case Method::ForwardEuler: return euler;
        case Method::RK4: return rk4;
        case Method::RK6: return rk6;
    }
    return rk4;
}

namespace {

// Stability function R(z) = 1 + z b^T (I - zA)^{-1} 1, evaluated by forward
// substitution since A is strictly lower triangular.
double stability_function(const ButcherTableau& tab, double z) {
    const std::size_t s = tab.stages();
    std::vector<double> g(s);
    double r = 1.0;
    for (std::size_t i = 0; i < s; ++i) {
        double acc = 1.0;
        for (std::size_t j = 0; j < tab.a[i].size(); ++j) acc += z * tab.a[i][j] * g[j];
        g[i] = acc;
        r += z * tab.b[i] * g[i];
    }
    return r;
}

}  // namespace

double real_stability_limit(Method m) {
    const auto& tab = tableau(m);
    constexpr double step = 1e-4;
    double x = step;
    while (std::abs(stability_function(tab, -x)) <= 1.0 + 1e-12 && x < 100.0) x += step;
    // bisect the crossing in [x - step, x]
    double lo = x - step;
    double hi = x;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (std::abs(stability_function(tab, -mid)) <= 1.0 + 1e-12) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

double policy_dt(const StencilOperator& op, const IntegratorSpec& spec) {
    if (spec.dt_override) {
        if (!(*spec.dt_override > 0.0)) throw PreconditionError("dt override must be positive");
        return *spec.dt_override;
    }
    if (!(spec.safety > 0.0) || spec.safety > 1.0) throw PreconditionError("safety factor must lie in (0, 1]");
    const double rho = max_symbol_magnitude(op);
    static const double limits[] = {real_stability_limit(Method::ForwardEuler), real_stability_limit(Method::RK4),
                                    real_stability_limit(Method::RK6)};
    const double limit = limits[static_cast<int>(spec.method)];
    return rho > 0.0 ? spec.safety * limit / rho : 1.0;
}

namespace {

template <typename T>
bool all_finite(std::span<const T> v) {
    for (const auto& x : v) {
        if constexpr (std::is_same_v<T, double>) {
            if (!std::isfinite(x)) return false;
        } else {
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
        }
    }
    return true;
}

}  // namespace

template <typename T>
EvolutionResult<T> evolve(const StencilOperator& op, const Forcing<T>& forcing, const BasicGridFunction<T>& v0,
                          double t_final, const IntegratorSpec& spec, const StepObserver<T>& observer) {
    if (!(t_final >= 0.0)) throw PreconditionError("t_final must be non-negative");
    if (!(v0.grid() == op.grid())) throw PreconditionError("initial data and operator live on different grids");
    EvolutionResult<T> result{v0, 0, 0.0};
    if (t_final == 0.0) return result;

    const double dt_max = policy_dt(op, spec);
    const long steps = std::max(1L, static_cast<long>(std::ceil(t_final / dt_max * (1.0 - 1e-14))));
    const double dt = t_final / static_cast<double>(steps);

    const auto& tab = tableau(spec.method);
    const std::size_t s = tab.stages();
    const std::size_t m = v0.size();
    std::vector<std::vector<T>> k(s, std::vector<T>(m));
    std::vector<T> stage(m);
    std::vector<T> f(m);
    auto y = result.final_state.values();

    constexpr long kCheckEvery = 64;
    for (long n = 0; n < steps; ++n) {
        const double t = static_cast<double>(n) * dt;
        for (std::size_t i = 0; i < s; ++i) {
            std::copy(y.begin(), y.end(), stage.begin());
            for (std::size_t j = 0; j < tab.a[i].size(); ++j) {
                const double a = tab.a[i][j] * dt;
                if (a == 0.0) continue;
                const auto& kj = k[j];
                for (std::size_t q = 0; q < m; ++q) stage[q] += a * kj[q];
            }
            op.apply<T>(std::span<const T>(stage), std::span<T>(k[i]));
            if (forcing) {
                forcing(t + tab.c[i] * dt, std::span<T>(f));
                auto& ki = k[i];
                for (std::size_t q = 0; q < m; ++q) ki[q] += f[q];
            }
        }
        for (std::size_t i = 0; i < s; ++i) {
            const double b = tab.b[i] * dt;
            if (b == 0.0) continue;
            const auto& ki = k[i];
            for (std::size_t q = 0; q < m; ++q) y[q] += b * ki[q];
        }
        if ((n + 1) % kCheckEvery == 0 || n + 1 == steps) {
            if (!all_finite<T>(y)) {
                throw BlowUpError("solution blew up at t = " + std::to_string(t + dt) + " (step " +
                                      std::to_string(n + 1) + " of " + std::to_string(steps) +
                                      "); the scheme is unstable for these parameters",
                                  t + dt, n + 1);
            }
        }
        if (observer) observer(n + 1, static_cast<double>(n + 1) * dt, std::span<const T>(y));
    }
    result.steps_taken = steps;
    result.dt_used = dt;
    return result;
}

template EvolutionResult<double> evolve<double>(const StencilOperator&, const Forcing<double>&, const GridFunction&,
                                                double, const IntegratorSpec&, const StepObserver<double>&);
template EvolutionResult<cplx> evolve<cplx>(const StencilOperator&, const Forcing<cplx>&, const ComplexGridFunction&,
                                            double, const IntegratorSpec&, const StepObserver<cplx>&);

StepObserver<double> csv_trace_observer(std::ostream& os, long every) {
    return [&os, every](long step, double t, std::span<const double> state) {
        if (every <= 0 || step % every != 0) return;
        os.precision(17);
        os << step << ',' << t;
        for (double v : state) os << ',' << v;
        os << '\n';
    };
}

double ode_order_selftest(Method m) {
    constexpr double kRoundoffFloor = 1e-14;
    // Every node carries the same scalar ODE: Q = -I, F = sin t.
    const BlockGrid grid = make_grid(4, 1);
    const StencilOperator minus_identity(grid, SchemeId::Custom, 0.0, 1.0, {StencilRow{{}, -1.0}});
    const auto exact = [](double t) { return 1.5 * std::exp(-t) + 0.5 * (std::sin(t) - std::cos(t)); };
    const Forcing<double> forcing = [](double t, std::span<double> out) {
        std::fill(out.begin(), out.end(), std::sin(t));
    };
    std::vector<double> inv_dt;
    std::vector<double> errors;
    for (int n : {20, 40, 80}) {
        IntegratorSpec spec{m, 0.5, 1.0 / n};
        const auto r = evolve<double>(minus_identity, forcing, GridFunction(grid, std::vector<double>(4, 1.0)), 1.0,
                                      spec);
        const double err = std::abs(r.final_state[0] - exact(1.0));
        // RK6 reaches round-off by dt = 1/80; such points say nothing about the order.
        if (err < kRoundoffFloor && inv_dt.size() >= 2) break;
        inv_dt.push_back(n);
        errors.push_back(err);
    }
    return -fit_loglog(inv_dt, errors).slope;
}

}  // namespace eis
