#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eisheat/grid.hpp"

namespace eis {

enum class FilterKind { SpectralCutoff, LocalKernel };

struct FilterSpec {
    FilterKind kind = FilterKind::SpectralCutoff;
    /// Spectral: keep modes with |omega| <= cutoff_fraction * M / 2.
    double cutoff_fraction = 0.5;
    /// Local: the kernel reproduces polynomials of degree <= kernel_order - 1.
    int kernel_order = 4;
    /// Local: total kernel width in sub-spacing units; 0 picks linear B-splines.
    int kernel_support = 0;

    static FilterSpec spectral(double cutoff = 0.5) { return {FilterKind::SpectralCutoff, cutoff, 4, 0}; }
    static FilterSpec local(int order = 4, int support = 0) { return {FilterKind::LocalKernel, 0.5, order, support}; }
};

/// "none" -> nullopt, "spectral[:cutoff]", "local[:order[:support]]".
std::optional<FilterSpec> parse_filter(std::string_view text);
std::string filter_name(const std::optional<FilterSpec>& spec);

/// Symmetric convolution kernel assembled from B-splines of mesh size two
/// sub-spacings. weights[d + radius] multiplies v_{i+d}.
struct LocalKernel {
    int radius = 0;
    int spline_order = 0;
    std::vector<double> weights;
};

LocalKernel build_local_kernel(int kernel_order, int kernel_support);

std::vector<cplx> spectral_filter(std::span<const cplx> v, double cutoff_fraction);
std::vector<cplx> local_kernel_filter(std::span<const cplx> v, const LocalKernel& kernel);

ComplexGridFunction spectral_filter(const ComplexGridFunction& v, const FilterSpec& spec);
GridFunction spectral_filter(const GridFunction& v, const FilterSpec& spec);
ComplexGridFunction local_kernel_filter(const ComplexGridFunction& v, const FilterSpec& spec);
GridFunction local_kernel_filter(const GridFunction& v, const FilterSpec& spec);

/// Dispatches on spec.kind.
std::vector<cplx> apply_filter(std::span<const cplx> v, const FilterSpec& spec);

}  // namespace eis
