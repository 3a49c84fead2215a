#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eisheat/fit.hpp"
#include "eisheat/grid.hpp"

using namespace eis;

TEST_CASE("block grids carry N+1 blocks, point grids N points") {
    const auto g2 = make_grid(64, 2);
    CHECK(g2.n_blocks() == 65);
    CHECK(g2.size() == 130);
    CHECK(g2.h() == doctest::Approx(kTwoPi / 65));
    CHECK(g2.sub_spacing() == doctest::Approx(kTwoPi / 130));

    const auto g3 = make_grid(32, 3);
    CHECK(g3.size() == 99);
    CHECK(g3.x(3) == doctest::Approx(g3.h()));

    const auto g1 = make_grid(32, 1);
    CHECK(g1.size() == 32);
    CHECK(g1.h() == doctest::Approx(kTwoPi / 32));
}

TEST_CASE("grid preconditions") {
    CHECK_THROWS_AS(make_grid(31, 2), PreconditionError);
    CHECK_THROWS_AS(make_grid(2, 1), PreconditionError);
    CHECK_THROWS_AS(make_grid(32, 4), PreconditionError);
    CHECK_NOTHROW(make_grid(4, 3));
}

TEST_CASE("coordinates are block-major and strictly inside [0, 2pi)") {
    const auto g = make_grid(16, 3);
    const auto xs = g.coordinates();
    REQUIRE(xs.size() == g.size());
    CHECK(xs.front() == 0.0);
    CHECK(xs.back() < kTwoPi);
    for (std::size_t i = 1; i < xs.size(); ++i) CHECK(xs[i] - xs[i - 1] == doctest::Approx(g.sub_spacing()));
}

TEST_CASE("discrete L2 norm") {
    const auto g = make_grid(32, 2);
    const auto one = sample(g, [](double) { return 1.0; });
    CHECK(l2_norm(one) == doctest::Approx(std::sqrt(kTwoPi)));
    // |e^{ix}|^2 = 1 everywhere, and cos^2 averages to 1/2 on a uniform grid
    const auto e = sample_complex(g, [](double x) { return std::exp(cplx(0, x)); });
    CHECK(l2_norm(e) == doctest::Approx(std::sqrt(kTwoPi)));
    const auto c = sample(g, [](double x) { return std::cos(x); });
    CHECK(l2_norm(c) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("grid function arithmetic refuses mixed grids") {
    GridFunction a(make_grid(16, 2));
    GridFunction b(make_grid(32, 2));
    CHECK_THROWS_AS(a += b, PreconditionError);
    CHECK_THROWS_AS(GridFunction(make_grid(16, 2), std::vector<double>(3)), PreconditionError);
    a[0] = 2.0;
    const auto d = 3.0 * (a - a) + a;
    CHECK(d[0] == 2.0);
}

TEST_CASE("log-log fit recovers an exact power law") {
    const std::vector<double> x{32, 64, 128, 256};
    std::vector<double> y;
    for (double v : x) y.push_back(7.0 * std::pow(v, -3.0));
    const auto fit = fit_loglog(x, y);
    CHECK(fit.slope == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log10(7.0)).epsilon(1e-12));
    CHECK(fit.rms_residual < 1e-12);
}
