#include "eisheat/grid.hpp"

#include <string>

namespace eis {

BlockGrid BlockGrid::make(int resolution, int block_size) {
    if (block_size < 1 || block_size > 3) {
        throw PreconditionError("block size must be 1, 2 or 3, got " + std::to_string(block_size));
    }
    if (resolution < 4 || resolution % 2 != 0) {
        throw PreconditionError("N must be even and at least 4, got " + std::to_string(resolution));
    }
    const int n_blocks = block_size == 1 ? resolution : resolution + 1;
    return BlockGrid(resolution, n_blocks, block_size);
}

std::vector<double> BlockGrid::coordinates() const {
    std::vector<double> xs(size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = x(i);
    return xs;
}

GridFunction sample(const BlockGrid& grid, const std::function<double(double)>& f) {
    GridFunction out(grid);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(grid.x(i));
    return out;
}

ComplexGridFunction sample_complex(const BlockGrid& grid, const std::function<cplx(double)>& f) {
    ComplexGridFunction out(grid);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(grid.x(i));
    return out;
}

ComplexGridFunction to_complex(const GridFunction& v) {
    ComplexGridFunction out(v.grid());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
    return out;
}

}  // namespace eis
