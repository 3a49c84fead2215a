#include "eisheat/problems.hpp"

#include <charconv>
#include <cmath>

#include "eisheat/errors.hpp"

namespace eis {

using namespace std::complex_literals;

Problem problem_decaying_cosine() {
    Problem p;
    p.name = "decaying-cosine";
    p.exact = [](double x, double t) { return cplx(std::exp(-t) * std::cos(x)); };
    p.exact_xx = [](double x, double t) { return cplx(-std::exp(-t) * std::cos(x)); };
    return p;
}

Problem problem_exp_cos() {
    Problem p;
    p.name = "exp-cos";
    p.exact = [](double x, double t) { return cplx(std::exp(std::cos(x - t))); };
    p.exact_xx = [](double x, double t) {
        const double s = std::sin(x - t);
        const double c = std::cos(x - t);
        return cplx((s * s - c) * std::exp(c));
    };
    // u_t = sin(x-t) u, u_xx = (sin^2(x-t) - cos(x-t)) u
    p.forcing = [](double x, double t) {
        const double s = std::sin(x - t);
        const double c = std::cos(x - t);
        return cplx((s + c - s * s) * std::exp(c));
    };
    return p;
}

Problem problem_single_mode(int omega) {
    Problem p;
    p.name = "mode:" + std::to_string(omega);
    const double w = omega;
    p.exact = [w](double x, double t) { return std::exp(-w * w * t) * std::exp(1i * (w * x)); };
    p.exact_xx = [w](double x, double t) { return -w * w * std::exp(-w * w * t) * std::exp(1i * (w * x)); };
    p.complex_valued = true;
    return p;
}

Problem problem_from_name(std::string_view name) {
    if (name == "decaying-cosine") return problem_decaying_cosine();
    if (name == "exp-cos") return problem_exp_cos();
    constexpr std::string_view prefix = "mode:";
    if (name.starts_with(prefix)) {
        const auto digits = name.substr(prefix.size());
        int omega = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), omega);
        if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) {
            return problem_single_mode(omega);
        }
    }
    throw PreconditionError("unknown problem '" + std::string(name) +
                            "' (expected decaying-cosine, exp-cos or mode:<omega>)");
}

}  // namespace eis
