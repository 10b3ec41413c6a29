#ifndef ROMSCAT_GRID_HPP
#define ROMSCAT_GRID_HPP

#include <vector>

namespace romscat {

/// Uniform grid of n cells (n+1 nodes) on [0,1].
struct SpatialGrid {
    int cells = 0;
    double h = 0.0;
    std::vector<double> nodes;

    static SpatialGrid uniform(int n_cells);

    int node_count() const { return static_cast<int>(nodes.size()); }
};

}  // namespace romscat

#endif
