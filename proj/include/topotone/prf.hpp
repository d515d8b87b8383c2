#ifndef TOPOTONE_PRF_HPP
#define TOPOTONE_PRF_HPP

#include "topotone/homology.hpp"

#include <string>
#include <vector>

namespace topotone {

/// Discretized persistent rank function on the half-plane a <= b.
/// Sampled at (a_i, b_j) = (i*eps_max/G, j*eps_max/G) for i, j in [0, G);
/// cells with a_i > b_j are identically zero.
struct PRFGrid {
    int resolution = 0; // G
    double eps_max = 0.0;
    std::vector<double> values; // row-major: values[i*G + j] = value(a_i, b_j)

    double step() const { return eps_max / resolution; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * resolution + j]; }
    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * resolution + j]; }
    bool same_shape(const PRFGrid& o) const {
        return resolution == o.resolution && eps_max == o.eps_max;
    }
};

/// Rank function of the dimension-k part of a diagram:
/// value(a, b) = number of points with birth <= a and death > b, for a <= b.
/// Essential deaths count as +infinity. Requires G >= 2.
PRFGrid prf(const PersistenceDiagram& d, int k, int grid);

/// L2 distance restricted to a <= b:
///   sqrt( sum over grid cells of (f - g)^2 * cell area ).
/// Diagonal cells (a_i = b_i) carry half a cell of area since the boundary
/// a = b bisects them; the measure of the domain then equals eps_max^2/2
/// exactly. Grids must share resolution and eps_max.
double l2_distance(const PRFGrid& f, const PRFGrid& g);

/// Pointwise arithmetic mean of a nonempty list of matching grids.
PRFGrid mean_prf(const std::vector<PRFGrid>& fs);

/// Scalar spread: population standard deviation (divide by n) of the L2
/// distances from each grid to the mean. Needs at least two grids.
double sigma(const std::vector<PRFGrid>& fs, const PRFGrid& mean);

/// Export: CSV rows (a, b, value), row-major over the grid.
void write_prf_csv(const std::string& path, const PRFGrid& g);

} // namespace topotone

#endif
