#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "eisheat/grid.hpp"

namespace eis {

enum class SchemeId {
    Perturbed2_20,  ///< D+D- plus the alternating (-1)^j c term, point grid
    Block2_3rd,     ///< two-point block, O(h) truncation
    Block3_3rd,     ///< three-point block built on the 3-point Laplacian
    Block3_5th,     ///< three-point block built on the 5-point Laplacian
    Std2,
    Std4,
    Std6,
    Custom,
};

std::string_view scheme_name(SchemeId id);
/// Accepts "perturbed", "block2", "block3-low", "block3-high", "std2", "std4", "std6".
SchemeId scheme_from_name(std::string_view name);
int scheme_block_size(SchemeId id);
std::vector<SchemeId> all_schemes();

struct StencilTap {
    int offset;          ///< in sub-spacing units, relative to the output node
    double coefficient;  ///< unscaled, c already folded in
};

struct StencilRow {
    std::vector<StencilTap> taps;
    double shift = 0.0;  ///< added as shift * v_i after scaling
};

/// Periodic banded operator. Row r of `rows()` is applied at every node i with
/// i mod period() == r, so the operator is invariant under shifts by one period.
class StencilOperator {
public:
    StencilOperator(BlockGrid grid, SchemeId scheme, double c, double scale, std::vector<StencilRow> rows);

    const BlockGrid& grid() const noexcept { return grid_; }
    SchemeId scheme() const noexcept { return scheme_; }
    double c() const noexcept { return c_; }
    double scale() const noexcept { return scale_; }
    std::span<const StencilRow> rows() const noexcept { return rows_; }
    std::size_t period() const noexcept { return rows_.size(); }

    /// Unscaled coefficient of row r at `offset`, zero when the tap is absent.
    double coefficient(std::size_t row, int offset) const;

    template <typename T>
    void apply(std::span<const T> in, std::span<T> out) const;

    template <typename T>
    BasicGridFunction<T> apply(const BasicGridFunction<T>& v) const {
        if (!(v.grid() == grid_)) throw PreconditionError("operator and grid function live on different grids");
        BasicGridFunction<T> out(grid_);
        apply<T>(v.values(), out.values());
        return out;
    }

    /// Dense M x M assembly, intended for small-grid cross checks.
    Eigen::MatrixXd dense() const;

    /// Human-readable offset -> coefficient table, one block per row.
    std::string stencil_table() const;

private:
    BlockGrid grid_;
    SchemeId scheme_;
    double c_;
    double scale_;
    std::vector<StencilRow> rows_;
    int min_offset_ = 0;
    int max_offset_ = 0;
};

StencilOperator build_perturbed(const BlockGrid& grid, double c);
StencilOperator build_block2(const BlockGrid& grid, double c);
StencilOperator build_block3_low(const BlockGrid& grid, double c);
StencilOperator build_block3_high(const BlockGrid& grid, double c);
StencilOperator build_standard(const BlockGrid& grid, int order);

/// Dispatch by scheme; `c` is ignored by the standard schemes.
StencilOperator build_operator(SchemeId id, const BlockGrid& grid, double c);

/// Builds the grid of the right block size for `id` and the operator on it.
StencilOperator build_operator(SchemeId id, int resolution, double c);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
    /// "4 2/3" style mixed fraction.
    std::string mixed() const;
};

Rational make_rational(std::int64_t num, std::int64_t den);

struct StencilCost {
    Rational adds;
    Rational mults;
    int points_outside_block = 0;
};

/// Per-point operation count averaged over the rows of one block, counting
/// only nonzero taps, with the 1/h^2 factor folded into the coefficients.
StencilCost stencil_cost(const StencilOperator& op);

// ---------------------------------------------------------------------------

template <typename T>
void StencilOperator::apply(std::span<const T> in, std::span<T> out) const {
    const auto m = static_cast<std::ptrdiff_t>(grid_.size());
    if (static_cast<std::ptrdiff_t>(in.size()) != m || static_cast<std::ptrdiff_t>(out.size()) != m) {
        throw PreconditionError("apply: vector length does not match the operator grid");
    }
    const auto p = static_cast<std::ptrdiff_t>(rows_.size());
    const std::ptrdiff_t lo = -min_offset_;
    const std::ptrdiff_t hi = m - max_offset_;
    for (std::ptrdiff_t base = 0; base < m; base += p) {
        for (std::ptrdiff_t r = 0; r < p; ++r) {
            const std::ptrdiff_t i = base + r;
            const StencilRow& row = rows_[static_cast<std::size_t>(r)];
            T acc{};
            if (i >= lo && i < hi) {
                for (const auto& tap : row.taps) acc += tap.coefficient * in[static_cast<std::size_t>(i + tap.offset)];
            } else {
                for (const auto& tap : row.taps) {
                    std::ptrdiff_t k = (i + tap.offset) % m;
                    if (k < 0) k += m;
                    acc += tap.coefficient * in[static_cast<std::size_t>(k)];
                }
            }
            out[static_cast<std::size_t>(i)] = scale_ * acc + row.shift * in[static_cast<std::size_t>(i)];
        }
    }
}

}  // namespace eis
