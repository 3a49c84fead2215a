#include "eisheat/postprocess.hpp"

#include <charconv>
#include <cmath>
#include <mutex>

#include <Eigen/Dense>
#include <fftw3.h>

namespace eis {

namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw PreconditionError("bad " + std::string(what) + " '" + std::string(text) + "' in filter spec");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

// Centered cardinal B-spline of order k (degree k-1), support [-k/2, k/2].
double bspline(int k, double x) {
    double sum = 0.0;
    double binom = 1.0;
    double fact = 1.0;
    for (int i = 1; i < k; ++i) fact *= i;
    for (int i = 0; i <= k; ++i) {
        const double y = x + 0.5 * k - i;
        if (y > 0.0) sum += ((i % 2) ? -1.0 : 1.0) * binom * std::pow(y, k - 1);
        binom = binom * (k - i) / (i + 1);
    }
    return sum / fact;
}

constexpr int kMesh = 2;

}  // namespace

std::optional<FilterSpec> parse_filter(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts[0] == "none" && parts.size() == 1) return std::nullopt;
    if (parts[0] == "spectral" && parts.size() <= 2) {
        FilterSpec spec = FilterSpec::spectral();
        if (parts.size() == 2) spec.cutoff_fraction = parse_number<double>(parts[1], "cutoff");
        if (!(spec.cutoff_fraction > 0.0 && spec.cutoff_fraction <= 1.0)) {
            throw PreconditionError("spectral cutoff must lie in (0, 1]");
        }
        return spec;
    }
    if (parts[0] == "local" && parts.size() <= 3) {
        FilterSpec spec = FilterSpec::local();
        if (parts.size() >= 2) spec.kernel_order = parse_number<int>(parts[1], "kernel order");
        if (parts.size() == 3) spec.kernel_support = parse_number<int>(parts[2], "kernel support");
        build_local_kernel(spec.kernel_order, spec.kernel_support);
        return spec;
    }
    throw PreconditionError("unknown filter '" + std::string(text) +
                            "' (expected none, spectral[:cutoff] or local[:order[:support]])");
}

std::string filter_name(const std::optional<FilterSpec>& spec) {
    if (!spec) return "none";
    return spec->kind == FilterKind::SpectralCutoff ? "spectral" : "local";
}

LocalKernel build_local_kernel(int kernel_order, int kernel_support) {
    if (kernel_order < 1) throw ConfigurationError("kernel order must be positive");
    const int r = (kernel_order - 1) / 2;
    int spline_order = 2;
    if (kernel_support != 0) {
        if (kernel_support <= 0 || kernel_support % kMesh != 0) {
            throw ConfigurationError("kernel support must be a positive multiple of " + std::to_string(kMesh));
        }
        spline_order = kernel_support / kMesh - 2 * r;
        if (spline_order < 2) {
            throw ConfigurationError("kernel support " + std::to_string(kernel_support) + " too small for order " +
                                     std::to_string(kernel_order));
        }
    }
    const int radius = kMesh * r + (kMesh * spline_order) / 2;

    // Samples of each symmetric pair of shifted B-splines on the integer offsets.
    const int n = 2 * radius + 1;
    Eigen::MatrixXd basis(n, r + 1);
    for (int d = -radius; d <= radius; ++d) {
        const double u = static_cast<double>(d) / kMesh;
        for (int g = 0; g <= r; ++g) {
            double b = bspline(spline_order, u - g);
            if (g > 0) b += bspline(spline_order, u + g);
            basis(d + radius, g) = b / kMesh;
        }
    }
    // Even discrete moments sum_d w_d d^p = delta_{p0}; odd ones vanish by symmetry.
    Eigen::MatrixXd moments(r + 1, r + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(r + 1);
    rhs(0) = 1.0;
    for (int q = 0; q <= r; ++q) {
        for (int g = 0; g <= r; ++g) {
            double acc = 0.0;
            for (int d = -radius; d <= radius; ++d) acc += basis(d + radius, g) * std::pow(d, 2 * q);
            moments(q, g) = acc;
        }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(moments);
    if (!lu.isInvertible()) throw ConfigurationError("local kernel moment system is singular");
    const Eigen::VectorXd coef = lu.solve(rhs);

    LocalKernel k;
    k.radius = radius;
    k.spline_order = spline_order;
    k.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) k.weights[static_cast<std::size_t>(i)] = basis.row(i).dot(coef);
    return k;
}

std::vector<cplx> spectral_filter(std::span<const cplx> v, double cutoff_fraction) {
    const int m = static_cast<int>(v.size());
    std::vector<cplx> out(v.begin(), v.end());
    if (m == 0) return out;
    auto* data = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan fwd;
    fftw_plan bwd;
    {
        std::lock_guard lock(planner_mutex());
        fwd = fftw_plan_dft_1d(m, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(m, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(fwd);
    const double cutoff = cutoff_fraction * m / 2.0;
    for (int k = 0; k < m; ++k) {
        const int w = k <= m / 2 ? k : k - m;
        // the Nyquist bin of an even-length grid is its own conjugate; drop it with +-M/2
        const double mag = (m % 2 == 0 && k == m / 2) ? m / 2.0 : std::abs(w);
        if (mag > cutoff) out[static_cast<std::size_t>(k)] = 0.0;
    }
    fftw_execute(bwd);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    for (auto& x : out) x /= static_cast<double>(m);
    return out;
}

std::vector<cplx> local_kernel_filter(std::span<const cplx> v, const LocalKernel& kernel) {
    const auto m = static_cast<std::ptrdiff_t>(v.size());
    if (2 * kernel.radius + 1 > m) throw PreconditionError("local kernel is wider than the grid");
    std::vector<cplx> out(v.size());
    const std::ptrdiff_t r = kernel.radius;
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        cplx acc{};
        for (std::ptrdiff_t d = -r; d <= r; ++d) {
            std::ptrdiff_t k = (i + d) % m;
            if (k < 0) k += m;
            acc += kernel.weights[static_cast<std::size_t>(d + r)] * v[static_cast<std::size_t>(k)];
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

namespace {

GridFunction real_part(const BlockGrid& grid, const std::vector<cplx>& v) {
    GridFunction out(grid);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].real();
    return out;
}

std::vector<cplx> widen(const GridFunction& v) { return {v.values().begin(), v.values().end()}; }

}  // namespace

ComplexGridFunction spectral_filter(const ComplexGridFunction& v, const FilterSpec& spec) {
    return {v.grid(), spectral_filter(v.values(), spec.cutoff_fraction)};
}

GridFunction spectral_filter(const GridFunction& v, const FilterSpec& spec) {
    return real_part(v.grid(), spectral_filter(widen(v), spec.cutoff_fraction));
}

ComplexGridFunction local_kernel_filter(const ComplexGridFunction& v, const FilterSpec& spec) {
    return {v.grid(), local_kernel_filter(v.values(), build_local_kernel(spec.kernel_order, spec.kernel_support))};
}

GridFunction local_kernel_filter(const GridFunction& v, const FilterSpec& spec) {
    return real_part(v.grid(),
                     local_kernel_filter(widen(v), build_local_kernel(spec.kernel_order, spec.kernel_support)));
}

std::vector<cplx> apply_filter(std::span<const cplx> v, const FilterSpec& spec) {
    if (spec.kind == FilterKind::SpectralCutoff) return spectral_filter(v, spec.cutoff_fraction);
    return local_kernel_filter(v, build_local_kernel(spec.kernel_order, spec.kernel_support));
}

}  // namespace eis
