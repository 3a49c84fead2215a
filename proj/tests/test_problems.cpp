#include <doctest.h>

#include <cmath>

#include "eisheat/problems.hpp"

using namespace eis;

namespace {

// Residual u_t - u_xx - F by centered differences at a few sample points.
double forcing_residual(const Problem& p) {
    const double d = 1e-4;
    const double dt = 1e-5;
    double worst = 0.0;
    for (double x : {0.0, 0.7, 2.1, 3.3, 5.9}) {
        for (double t : {0.0, 0.4, 1.0}) {
            const cplx ut = (p.exact(x, t + dt) - p.exact(x, t - dt)) / (2 * dt);
            const cplx uxx = (p.exact(x + d, t) - 2.0 * p.exact(x, t) + p.exact(x - d, t)) / (d * d);
            const cplx f = p.has_forcing() ? p.forcing(x, t) : cplx{};
            worst = std::max(worst, std::abs(ut - uxx - f));
            worst = std::max(worst, std::abs(uxx - p.exact_xx(x, t)));
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("manufactured forcing satisfies the PDE") {
    CHECK(forcing_residual(problem_decaying_cosine()) <= 1e-6);
    CHECK(forcing_residual(problem_exp_cos()) <= 1e-6);
    CHECK(forcing_residual(problem_single_mode(3)) <= 1e-6);
}

TEST_CASE("problem registry") {
    CHECK(problem_from_name("exp-cos").has_forcing());
    CHECK_FALSE(problem_from_name("decaying-cosine").has_forcing());
    const auto mode = problem_from_name("mode:2");
    CHECK(mode.complex_valued);
    CHECK(std::abs(mode.exact(0.0, 1.0) - std::exp(-4.0)) < 1e-15);
    CHECK_THROWS_AS(problem_from_name("mode:x"), PreconditionError);
    CHECK_THROWS_AS(problem_from_name("burgers"), PreconditionError);
}

TEST_CASE("initial data") {
    const auto p = problem_exp_cos();
    CHECK(p.exact(0.0, 0.0).real() == doctest::Approx(std::exp(1.0)));
    CHECK(problem_decaying_cosine().exact(0.0, 2.0).real() == doctest::Approx(std::exp(-2.0)));
}
