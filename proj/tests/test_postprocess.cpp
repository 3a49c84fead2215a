#include <doctest.h>

#include <cmath>
#include <random>

#include "eisheat/postprocess.hpp"

using namespace eis;

namespace {

std::vector<cplx> random_field(std::size_t n) {
    std::mt19937 gen(11);
    std::normal_distribution<double> dist;
    std::vector<cplx> v(n);
    for (auto& x : v) x = {dist(gen), dist(gen)};
    return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST_CASE("filter spec parsing") {
    CHECK_FALSE(parse_filter("none").has_value());
    auto s = parse_filter("spectral:0.25");
    REQUIRE(s);
    CHECK(s->kind == FilterKind::SpectralCutoff);
    CHECK(s->cutoff_fraction == 0.25);
    auto l = parse_filter("local:6:12");
    REQUIRE(l);
    CHECK(l->kind == FilterKind::LocalKernel);
    CHECK(l->kernel_order == 6);
    CHECK(l->kernel_support == 12);
    CHECK(filter_name(l) == "local");
    CHECK_THROWS_AS(parse_filter("gaussian"), PreconditionError);
    CHECK_THROWS_AS(parse_filter("spectral:1.5"), PreconditionError);
    CHECK_THROWS_AS(parse_filter("local:x"), PreconditionError);
}

TEST_CASE("spectral filter is idempotent and keeps low modes") {
    for (std::size_t m : {64u, 66u, 99u}) {
        const auto v = random_field(m);
        const auto once = spectral_filter(v, 0.5);
        const auto twice = spectral_filter(once, 0.5);
        CHECK(max_diff(once, twice) < 1e-13);

        std::vector<cplx> low(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double x = kTwoPi * static_cast<double>(i) / static_cast<double>(m);
            low[i] = std::exp(cplx(0, 3 * x)) + 0.5 * std::cos(5 * x);
        }
        CHECK(max_diff(spectral_filter(low, 0.5), low) < 1e-13);
    }
}

TEST_CASE("spectral filter removes the Nyquist mode") {
    std::vector<cplx> v(64);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i % 2 == 0 ? 1.0 : -1.0;
    double worst = 0.0;
    for (const auto& x : spectral_filter(v, 0.5)) worst = std::max(worst, std::abs(x));
    CHECK(worst < 1e-14);
    // a cutoff of 1 keeps every mode, Nyquist included
    CHECK(max_diff(spectral_filter(v, 1.0), v) < 1e-14);
}

TEST_CASE("default local kernel weights") {
    const auto k = build_local_kernel(4, 0);
    CHECK(k.radius == 4);
    CHECK(k.spline_order == 2);
    // the outermost taps sit on the ends of the linear B-splines
    const std::vector<double> expected{0.0,      -0.015625, -0.03125, 0.265625, 0.5625,
                                       0.265625, -0.03125,  -0.015625, 0.0};
    REQUIRE(k.weights.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::abs(k.weights[i] - expected[i]) < 1e-14);
}

TEST_CASE("local kernels reproduce polynomials up to their order") {
    for (auto [order, support] : {std::pair{4, 0}, std::pair{4, 10}, std::pair{6, 12}, std::pair{2, 6}}) {
        const auto k = build_local_kernel(order, support);
        CAPTURE(order);
        CAPTURE(support);
        for (int p = 0; p < order; ++p) {
            // sum_d w_d (x + d)^p = x^p at an arbitrary point
            const double x = 0.37;
            double acc = 0.0;
            for (int d = -k.radius; d <= k.radius; ++d) acc += k.weights[d + k.radius] * std::pow(x + d, p);
            CHECK(acc == doctest::Approx(std::pow(x, p)).epsilon(1e-11));
        }
    }
}

TEST_CASE("local kernel annihilates the sawtooth") {
    const auto k = build_local_kernel(4, 0);
    double acc = 0.0;
    for (int d = -k.radius; d <= k.radius; ++d) acc += (d % 2 == 0 ? 1.0 : -1.0) * k.weights[d + k.radius];
    CHECK(std::abs(acc) < 1e-14);
}

TEST_CASE("local kernel configuration errors") {
    CHECK_THROWS_AS(build_local_kernel(0, 0), ConfigurationError);
    CHECK_THROWS_AS(build_local_kernel(4, 7), ConfigurationError);
    CHECK_THROWS_AS(build_local_kernel(6, 6), ConfigurationError);
    CHECK_THROWS_AS(local_kernel_filter(random_field(5), build_local_kernel(4, 0)), PreconditionError);
}

TEST_CASE("grid-function overloads dispatch on the spec") {
    const auto grid = make_grid(32, 2);
    const auto v = sample(grid, [](double x) { return std::sin(2 * x); });
    const auto s = spectral_filter(v, FilterSpec::spectral());
    const auto l = local_kernel_filter(v, FilterSpec::local());
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(s[i] == doctest::Approx(v[i]).epsilon(1e-12));
        CHECK(std::abs(l[i] - v[i]) < 1e-3);
    }
    std::vector<cplx> wide(v.values().begin(), v.values().end());
    CHECK(max_diff(apply_filter(wide, FilterSpec::spectral()), spectral_filter(wide, 0.5)) == 0.0);
}
