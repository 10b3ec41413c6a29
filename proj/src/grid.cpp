#include "romscat/grid.hpp"

#include <cmath>

#include "romscat/errors.hpp"

namespace romscat {

SpatialGrid SpatialGrid::uniform(int n_cells) {
    if (n_cells < 2) throw validation_error("grid: need at least 2 cells");
    SpatialGrid g;
    g.cells = n_cells;
    g.h = 1.0 / n_cells;
    g.nodes.resize(n_cells + 1);
    for (int i = 0; i <= n_cells; ++i) g.nodes[i] = static_cast<double>(i) / n_cells;
    g.nodes.front() = 0.0;
    g.nodes.back() = 1.0;
    return g;
}

}  // namespace romscat
