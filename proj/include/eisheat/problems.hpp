#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "eisheat/grid.hpp"

namespace eis {

using SpaceTimeFunction = std::function<cplx(double x, double t)>;

/// Manufactured solution of u_t = u_xx + F on the periodic interval.
struct Problem {
    std::string name;
    SpaceTimeFunction exact;
    SpaceTimeFunction exact_xx;
    SpaceTimeFunction forcing;  ///< empty when F = 0
    bool complex_valued = false;

    bool has_forcing() const noexcept { return static_cast<bool>(forcing); }
};

/// u = e^{-t} cos x, F = 0.
Problem problem_decaying_cosine();
/// u = exp(cos(x - t)) with the matching forcing.
Problem problem_exp_cos();
/// u = e^{-omega^2 t} e^{i omega x}, F = 0.
Problem problem_single_mode(int omega);

/// "decaying-cosine", "exp-cos" or "mode:<omega>".
Problem problem_from_name(std::string_view name);

}  // namespace eis
