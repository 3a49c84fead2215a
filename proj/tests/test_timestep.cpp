#include <doctest.h>

#include <cmath>
#include <sstream>

#include "eisheat/timestep.hpp"

using namespace eis;

TEST_CASE("method names and orders") {
    CHECK(method_from_name("euler") == Method::ForwardEuler);
    CHECK(method_from_name("rk6") == Method::RK6);
    CHECK(method_name(Method::RK4) == "rk4");
    CHECK_THROWS_AS(method_from_name("rk5"), PreconditionError);
    CHECK(method_order(Method::RK6) == 6);
}

TEST_CASE("tableaus are consistent") {
    for (auto m : {Method::ForwardEuler, Method::RK4, Method::RK6}) {
        const auto& t = tableau(m);
        double bsum = 0.0;
        for (double b : t.b) bsum += b;
        CHECK(bsum == doctest::Approx(1.0).epsilon(1e-14));
        for (std::size_t i = 0; i < t.stages(); ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < i; ++j) row += t.a[i][j];
            CHECK(row == doctest::Approx(t.c[i]).epsilon(1e-14));
        }
    }
    CHECK(tableau(Method::RK6).stages() == 7);
}

TEST_CASE("real stability limits") {
    CHECK(real_stability_limit(Method::ForwardEuler) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(real_stability_limit(Method::RK4) == doctest::Approx(2.785293563).epsilon(1e-6));
    const double l6 = real_stability_limit(Method::RK6);
    CHECK(l6 > 2.785);
    CHECK(l6 < 4.0);
}

TEST_CASE("ODE self-test recovers the design order") {
    CHECK(ode_order_selftest(Method::ForwardEuler) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(ode_order_selftest(Method::RK4) == doctest::Approx(4.0).epsilon(0.025));
    CHECK(ode_order_selftest(Method::RK6) == doctest::Approx(6.0).epsilon(0.0167));
}

TEST_CASE("evolve lands exactly on t_final and respects the policy") {
    const auto op = build_operator(SchemeId::Block2_3rd, 32, -0.25);
    const IntegratorSpec spec{};
    const double dt_max = policy_dt(op, spec);
    const auto v0 = sample(op.grid(), [](double x) { return std::cos(x); });
    const auto res = evolve<double>(op, {}, v0, 0.3, spec);
    CHECK(res.dt_used <= dt_max);
    CHECK(res.dt_used * static_cast<double>(res.steps_taken) == doctest::Approx(0.3).epsilon(1e-14));

    const auto zero = evolve<double>(op, {}, v0, 0.0, spec);
    CHECK(zero.steps_taken == 0);
    for (std::size_t i = 0; i < v0.size(); ++i) CHECK(zero.final_state[i] == v0[i]);
    CHECK_THROWS_AS(evolve<double>(op, {}, v0, -1.0, spec), PreconditionError);
    CHECK_THROWS_AS(policy_dt(op, IntegratorSpec{Method::RK4, 1.5, std::nullopt}), PreconditionError);
}

TEST_CASE("a step far beyond the stability limit blows up") {
    const auto op = build_operator(SchemeId::Std2, 32, 0.0);
    auto v0 = sample(op.grid(), [](double x) { return std::cos(x) + 1e-3 * std::cos(15 * x); });
    IntegratorSpec spec{Method::ForwardEuler, 0.5, 5e-2};
    CHECK_THROWS_AS(evolve<double>(op, {}, v0, 50.0, spec), BlowUpError);
}

TEST_CASE("observer sees every step") {
    const auto op = build_operator(SchemeId::Std2, 8, 0.0);
    const auto v0 = sample(op.grid(), [](double x) { return std::sin(x); });
    std::ostringstream os;
    const auto res = evolve<double>(op, {}, v0, 0.1, IntegratorSpec{}, csv_trace_observer(os, 1));
    const auto text = os.str();
    CHECK(std::count(text.begin(), text.end(), '\n') >= res.steps_taken);
}

TEST_CASE("complex evolution of a single mode follows the stability polynomial") {
    const auto op = build_operator(SchemeId::Std2, 16, 0.0);
    const auto v0 = sample_complex(op.grid(), [](double x) { return std::exp(cplx(0, 2 * x)); });
    const double h = op.grid().h();
    const double lambda = -4.0 / (h * h) * std::pow(std::sin(h), 2);
    for (auto m : {Method::RK4, Method::RK6}) {
        const auto res = evolve<cplx>(op, {}, v0, 0.5, IntegratorSpec{m, 0.5, std::nullopt});
        // R(z) = sum_k z^k b^T A^{k-1} 1 for an explicit tableau
        const auto& tab = tableau(m);
        const double z = lambda * res.dt_used;
        std::vector<double> stage(tab.stages(), 1.0);
        double r = 1.0, zk = 1.0;
        for (std::size_t k = 1; k <= tab.stages(); ++k) {
            zk *= z;
            double bt = 0.0;
            for (std::size_t i = 0; i < tab.stages(); ++i) bt += tab.b[i] * stage[i];
            r += zk * bt;
            std::vector<double> next(tab.stages(), 0.0);
            for (std::size_t i = 0; i < tab.stages(); ++i)
                for (std::size_t j = 0; j < i; ++j) next[i] += tab.a[i][j] * stage[j];
            stage = next;
        }
        const cplx expected = std::pow(r, static_cast<double>(res.steps_taken)) * v0[3];
        CHECK(std::abs(res.final_state[3] - expected) < 1e-13);
        CHECK(std::abs(res.final_state[3] - std::exp(lambda * 0.5) * v0[3]) < 1e-5);
    }
}

TEST_CASE("evolution without forcing is linear in the initial data") {
    const auto op = build_operator(SchemeId::Block3_5th, 16, -0.385);
    const auto v0 = sample(op.grid(), [](double x) { return std::exp(std::sin(x)); });
    const IntegratorSpec spec{Method::RK6, 0.5, std::nullopt};
    const auto a = evolve<double>(op, {}, v0, 0.2, spec);
    const auto b = evolve<double>(op, {}, -3.5 * v0, 0.2, spec);
    for (std::size_t i = 0; i < v0.size(); ++i) CHECK(b.final_state[i] == doctest::Approx(-3.5 * a.final_state[i]).epsilon(1e-13));
}
