#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "eisheat/grid.hpp"
#include "eisheat/operators.hpp"

namespace eis {

enum class Method { ForwardEuler, RK4, RK6 };

std::string_view method_name(Method m);
/// "euler", "rk4", "rk6"
Method method_from_name(std::string_view name);
int method_order(Method m);

/// Explicit Butcher tableau; `a` is strictly lower triangular.
struct ButcherTableau {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    std::vector<double> c;

    std::size_t stages() const noexcept { return b.size(); }
};

const ButcherTableau& tableau(Method m);

/// Length L of the real stability interval [-L, 0] of the method's
/// stability polynomial, found by scanning |R(-x)| <= 1.
double real_stability_limit(Method m);

struct IntegratorSpec {
    Method method = Method::RK4;
    double safety = 0.5;
    std::optional<double> dt_override;
};

template <typename T>
struct EvolutionResult {
    BasicGridFunction<T> final_state;
    long steps_taken = 0;
    double dt_used = 0.0;
};

/// Writes F(t) into the output span. An empty function means F = 0.
template <typename T>
using Forcing = std::function<void(double t, std::span<T> out)>;

/// Called after every step with (step index, time, state).
template <typename T>
using StepObserver = std::function<void(long step, double t, std::span<const T> state)>;

/// Step size the policy picks for `op` (before rounding to land on t_final).
double policy_dt(const StencilOperator& op, const IntegratorSpec& spec);

/// Integrates dv/dt = Qv + F(t) with a uniform step dt = t_final / n, n the
/// smallest count that keeps dt under the stability-based limit. Throws
/// BlowUpError when the state stops being finite.
template <typename T>
EvolutionResult<T> evolve(const StencilOperator& op, const Forcing<T>& forcing, const BasicGridFunction<T>& v0,
                          double t_final, const IntegratorSpec& spec, const StepObserver<T>& observer = {});

/// Observer that appends "step,t,v_0,...,v_{M-1}" every `every` steps.
StepObserver<double> csv_trace_observer(std::ostream& os, long every);

/// Observed order on y' = -y + sin t, y(0) = 1 over [0, 1] with dt = 1/20, 1/40, 1/80;
/// step sizes whose error is already at round-off are left out of the fit.
double ode_order_selftest(Method m);

extern template EvolutionResult<double> evolve<double>(const StencilOperator&, const Forcing<double>&,
                                                       const GridFunction&, double, const IntegratorSpec&,
                                                       const StepObserver<double>&);
extern template EvolutionResult<cplx> evolve<cplx>(const StencilOperator&, const Forcing<cplx>&,
                                                   const ComplexGridFunction&, double, const IntegratorSpec&,
                                                   const StepObserver<cplx>&);

}  // namespace eis
