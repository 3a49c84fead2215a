#include "eisheat/operators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <iomanip>

namespace eis {

namespace {

// Accumulates weight * pattern, with pattern[k] sitting at first_offset + k.
class RowBuilder {
public:
    RowBuilder& add(int first_offset, std::initializer_list<double> pattern, double weight = 1.0) {
        int off = first_offset;
        for (double a : pattern) coefs_[off++] += weight * a;
        return *this;
    }

    StencilRow build(double shift = 0.0) const {
        StencilRow row;
        row.shift = shift;
        for (const auto& [off, a] : coefs_) {
            if (a != 0.0) row.taps.push_back({off, a});
        }
        return row;
    }

private:
    std::map<int, double> coefs_;
};

void require_block_size(const BlockGrid& grid, int m, const char* what) {
    if (grid.block_size() != m) {
        throw PreconditionError(std::string(what) + " requires block size " + std::to_string(m) + ", got " +
                                std::to_string(grid.block_size()));
    }
}

}  // namespace

std::string_view scheme_name(SchemeId id) {
    switch (id) {
        case SchemeId::Perturbed2_20: return "perturbed";
        case SchemeId::Block2_3rd: return "block2";
        case SchemeId::Block3_3rd: return "block3-low";
        case SchemeId::Block3_5th: return "block3-high";
        case SchemeId::Std2: return "std2";
        case SchemeId::Std4: return "std4";
        case SchemeId::Std6: return "std6";
        case SchemeId::Custom: return "custom";
    }
    return "unknown";
}

SchemeId scheme_from_name(std::string_view name) {
    for (SchemeId id : all_schemes()) {
        if (scheme_name(id) == name) return id;
    }
    throw PreconditionError("unknown scheme '" + std::string(name) +
                            "' (expected perturbed, block2, block3-low, block3-high, std2, std4 or std6)");
}

int scheme_block_size(SchemeId id) {
    switch (id) {
        case SchemeId::Block2_3rd: return 2;
        case SchemeId::Block3_3rd:
        case SchemeId::Block3_5th: return 3;
        default: return 1;
    }
}

std::vector<SchemeId> all_schemes() {
    return {SchemeId::Perturbed2_20, SchemeId::Block2_3rd, SchemeId::Block3_3rd, SchemeId::Block3_5th,
            SchemeId::Std2,          SchemeId::Std4,       SchemeId::Std6};
}

StencilOperator::StencilOperator(BlockGrid grid, SchemeId scheme, double c, double scale, std::vector<StencilRow> rows)
    : grid_(grid), scheme_(scheme), c_(c), scale_(scale), rows_(std::move(rows)) {
    if (rows_.empty()) throw PreconditionError("stencil operator needs at least one row");
    if (grid_.size() % rows_.size() != 0) {
        throw PreconditionError("grid size is not a multiple of the stencil period");
    }
    for (const auto& row : rows_) {
        for (const auto& tap : row.taps) {
            min_offset_ = std::min(min_offset_, tap.offset);
            max_offset_ = std::max(max_offset_, tap.offset);
        }
    }
    if (max_offset_ - min_offset_ >= static_cast<int>(grid_.size())) {
        throw PreconditionError("stencil is wider than the grid");
    }
}

double StencilOperator::coefficient(std::size_t row, int offset) const {
    for (const auto& tap : rows_.at(row).taps) {
        if (tap.offset == offset) return tap.coefficient;
    }
    return 0.0;
}

Eigen::MatrixXd StencilOperator::dense() const {
    const auto m = static_cast<Eigen::Index>(grid_.size());
    const auto p = static_cast<Eigen::Index>(rows_.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& row = rows_[static_cast<std::size_t>(i % p)];
        for (const auto& tap : row.taps) {
            Eigen::Index k = (i + tap.offset) % m;
            if (k < 0) k += m;
            a(i, k) += scale_ * tap.coefficient;
        }
        a(i, i) += row.shift;
    }
    return a;
}

std::string StencilOperator::stencil_table() const {
    std::ostringstream os;
    os << "# scheme " << scheme_name(scheme_) << ", c = " << c_ << ", scale = " << std::setprecision(17) << scale_
       << '\n';
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        os << "row " << r << ":";
        for (const auto& tap : rows_[r].taps) os << "  [" << tap.offset << "] " << tap.coefficient;
        if (rows_[r].shift != 0.0) os << "  (+" << rows_[r].shift << " * v)";
        os << '\n';
    }
    return os.str();
}

StencilOperator build_perturbed(const BlockGrid& grid, double c) {
    require_block_size(grid, 1, "perturbed scheme");
    const double h = grid.h();
    // Period two rows carry the (-1)^j c term; N is even so the pattern wraps cleanly.
    std::vector<StencilRow> rows{RowBuilder().add(-1, {1, -2, 1}).build(c),
                                 RowBuilder().add(-1, {1, -2, 1}).build(-c)};
    return {grid, SchemeId::Perturbed2_20, c, 1.0 / (h * h), std::move(rows)};
}

StencilOperator build_block2(const BlockGrid& grid, double c) {
    require_block_size(grid, 2, "two-point block scheme");
    const double s = grid.sub_spacing();
    std::vector<StencilRow> rows{
        // x_j: u_{j-1/2}, u_j, u_{j+1/2}, u_{j+1}
        RowBuilder().add(-1, {1, -2, 1}).add(-1, {-1, 3, -3, 1}, c).build(),
        // x_{j+1/2}: u_{j-1/2}, u_j, u_{j+1/2}, u_{j+1}
        RowBuilder().add(-1, {1, -2, 1}).add(-2, {1, -3, 3, -1}, c).build(),
    };
    return {grid, SchemeId::Block2_3rd, c, 1.0 / (s * s), std::move(rows)};
}

StencilOperator build_block3_low(const BlockGrid& grid, double c) {
    require_block_size(grid, 3, "three-point block scheme");
    const double s = grid.sub_spacing();
    // The c-patterns carry the opposite sign to the two-point block, so the
    // h^2 term of the smooth symbol branch cancels at c ~ +1.34.
    std::vector<StencilRow> rows{
        RowBuilder().add(-1, {4, -8, 4}).add(-1, {1, -3, 3, -1}, c).build(),
        RowBuilder().add(-1, {4, -8, 4}).build(),
        RowBuilder().add(-1, {4, -8, 4}).add(-2, {-1, 3, -3, 1}, c).build(),
    };
    return {grid, SchemeId::Block3_3rd, c, 1.0 / (4.0 * s * s), std::move(rows)};
}

StencilOperator build_block3_high(const BlockGrid& grid, double c) {
    require_block_size(grid, 3, "three-point block scheme");
    const double s = grid.sub_spacing();
    // The c-patterns are the sixth-difference-like (1,-5,10,-10,5,-1) spanning
    // u_{j-2/3}..u_{j+1} on the first row and its mirror image on the last row.
    std::vector<StencilRow> rows{
        RowBuilder().add(-2, {-1, 16, -30, 16, -1}).add(-2, {1, -5, 10, -10, 5, -1}, c).build(),
        RowBuilder().add(-2, {-1, 16, -30, 16, -1}).build(),
        RowBuilder().add(-2, {-1, 16, -30, 16, -1}).add(-3, {-1, 5, -10, 10, -5, 1}, c).build(),
    };
    return {grid, SchemeId::Block3_5th, c, 1.0 / (12.0 * s * s), std::move(rows)};
}

StencilOperator build_standard(const BlockGrid& grid, int order) {
    require_block_size(grid, 1, "standard scheme");
    const double h = grid.h();
    switch (order) {
        case 2:
            return {grid, SchemeId::Std2, 0.0, 1.0 / (h * h), {RowBuilder().add(-1, {1, -2, 1}).build()}};
        case 4:
            return {grid, SchemeId::Std4, 0.0, 1.0 / (12.0 * h * h),
                    {RowBuilder().add(-2, {-1, 16, -30, 16, -1}).build()}};
        case 6:
            return {grid, SchemeId::Std6, 0.0, 1.0 / (180.0 * h * h),
                    {RowBuilder().add(-3, {2, -27, 270, -490, 270, -27, 2}).build()}};
        default:
            throw PreconditionError("standard scheme order must be 2, 4 or 6, got " + std::to_string(order));
    }
}

StencilOperator build_operator(SchemeId id, const BlockGrid& grid, double c) {
    switch (id) {
        case SchemeId::Perturbed2_20: return build_perturbed(grid, c);
        case SchemeId::Block2_3rd: return build_block2(grid, c);
        case SchemeId::Block3_3rd: return build_block3_low(grid, c);
        case SchemeId::Block3_5th: return build_block3_high(grid, c);
        case SchemeId::Std2: return build_standard(grid, 2);
        case SchemeId::Std4: return build_standard(grid, 4);
        case SchemeId::Std6: return build_standard(grid, 6);
        case SchemeId::Custom: break;
    }
    throw PreconditionError("custom operators have no builder");
}

StencilOperator build_operator(SchemeId id, int resolution, double c) {
    return build_operator(id, make_grid(resolution, scheme_block_size(id)), c);
}

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw PreconditionError("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const auto g = std::gcd(num, den);
    return {num / g, den / g};
}

std::string Rational::mixed() const {
    const auto whole = num / den;
    const auto rem = num % den;
    if (rem == 0) return std::to_string(whole);
    if (whole == 0) return std::to_string(rem) + "/" + std::to_string(den);
    return std::to_string(whole) + " " + std::to_string(rem < 0 ? -rem : rem) + "/" + std::to_string(den);
}

StencilCost stencil_cost(const StencilOperator& op) {
    const int m = op.grid().block_size();
    const auto rows = op.rows();
    std::int64_t terms = 0;
    int left = 0;
    int right = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const int pos = static_cast<int>(r) % m;
        const auto n = static_cast<std::int64_t>(rows[r].taps.size()) + (rows[r].shift != 0.0 ? 1 : 0);
        terms += n;
        for (const auto& tap : rows[r].taps) {
            left = std::max(left, -(pos + tap.offset));
            right = std::max(right, pos + tap.offset - (m - 1));
        }
    }
    const auto nrows = static_cast<std::int64_t>(rows.size());
    StencilCost cost;
    cost.mults = make_rational(terms, nrows);
    cost.adds = make_rational(terms - nrows, nrows);
    cost.points_outside_block = std::max(left, right);
    return cost;
}

}  // namespace eis
