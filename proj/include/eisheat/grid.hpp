#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "eisheat/errors.hpp"

namespace eis {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Periodic grid on [0, 2pi) made of `n_blocks` blocks with `block_size`
/// equally spaced sub-nodes each. Nodes are stored block-major:
/// x_0, x_{1/m}, ..., x_{(m-1)/m}, x_1, ...
class BlockGrid {
public:
    /// `resolution` is the resolution parameter N. Block grids (m = 2, 3) carry
    /// N + 1 blocks, point grids (m = 1) carry N points. N must be even.
    static BlockGrid make(int resolution, int block_size);

    int resolution() const noexcept { return resolution_; }
    int n_blocks() const noexcept { return n_blocks_; }
    int block_size() const noexcept { return block_size_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(n_blocks_) * block_size_; }

    /// Block spacing h = 2pi / n_blocks.
    double h() const noexcept { return kTwoPi / n_blocks_; }
    double sub_spacing() const noexcept { return h() / block_size_; }
    double domain_length() const noexcept { return kTwoPi; }

    /// Coordinate of flat node index i (i = j*m + k).
    double x(std::size_t i) const noexcept { return static_cast<double>(i) * sub_spacing(); }
    std::vector<double> coordinates() const;

    bool operator==(const BlockGrid&) const = default;

private:
    BlockGrid(int resolution, int n_blocks, int block_size)
        : resolution_(resolution), n_blocks_(n_blocks), block_size_(block_size) {}

    int resolution_;
    int n_blocks_;
    int block_size_;
};

inline BlockGrid make_grid(int resolution, int block_size) { return BlockGrid::make(resolution, block_size); }

/// Samples of a real or complex field on a BlockGrid.
template <typename T>
class BasicGridFunction {
public:
    using value_type = T;

    explicit BasicGridFunction(BlockGrid grid) : grid_(grid), values_(grid.size(), T{}) {}
    BasicGridFunction(BlockGrid grid, std::vector<T> values) : grid_(grid), values_(std::move(values)) {
        if (values_.size() != grid_.size()) {
            throw PreconditionError("grid function length does not match grid size");
        }
    }

    const BlockGrid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }

    std::span<T> values() noexcept { return values_; }
    std::span<const T> values() const noexcept { return values_; }

    T& operator[](std::size_t i) noexcept { return values_[i]; }
    const T& operator[](std::size_t i) const noexcept { return values_[i]; }

    BasicGridFunction& operator+=(const BasicGridFunction& o) {
        check_same_grid(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
        return *this;
    }
    BasicGridFunction& operator-=(const BasicGridFunction& o) {
        check_same_grid(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
        return *this;
    }
    BasicGridFunction& operator*=(T a) {
        for (auto& v : values_) v *= a;
        return *this;
    }

    friend BasicGridFunction operator+(BasicGridFunction a, const BasicGridFunction& b) { return a += b; }
    friend BasicGridFunction operator-(BasicGridFunction a, const BasicGridFunction& b) { return a -= b; }
    friend BasicGridFunction operator*(T s, BasicGridFunction a) { return a *= s; }

private:
    void check_same_grid(const BasicGridFunction& o) const {
        if (!(o.grid_ == grid_)) throw PreconditionError("grid functions live on different grids");
    }

    BlockGrid grid_;
    std::vector<T> values_;
};

using GridFunction = BasicGridFunction<double>;
using ComplexGridFunction = BasicGridFunction<cplx>;

GridFunction sample(const BlockGrid& grid, const std::function<double(double)>& f);
ComplexGridFunction sample_complex(const BlockGrid& grid, const std::function<cplx(double)>& f);

/// Grid-weighted discrete L2 norm sqrt((2pi/M) sum |v_i|^2).
template <typename T>
double l2_norm(std::span<const T> v) {
    if (v.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& x : v) acc += std::norm(x);
    return std::sqrt(kTwoPi / static_cast<double>(v.size()) * acc);
}

template <typename T>
double l2_norm(const BasicGridFunction<T>& v) {
    return l2_norm(v.values());
}

ComplexGridFunction to_complex(const GridFunction& v);

}  // namespace eis
