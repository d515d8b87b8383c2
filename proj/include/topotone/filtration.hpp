#ifndef TOPOTONE_FILTRATION_HPP
#define TOPOTONE_FILTRATION_HPP

#include "topotone/embed.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace topotone {

using VertexId = std::uint32_t;

/// A k-simplex as its k+1 landmark indices, strictly increasing.
using Simplex = std::vector<VertexId>;

struct FiltrationEntry {
    Simplex simplex;
    double birth = 0.0; // smallest scale at which some witness witnesses it
};

/// Face-closed list of simplices with exact birth scales, sorted by
/// (birth, dim, lexicographic vertices). birth(face) <= birth(coface).
struct WitnessFiltration {
    std::vector<FiltrationEntry> entries;
    double eps_max = 0.0;
    int max_dim = 0;
    std::size_t vertex_count = 0; // number of landmarks
};

/// All-points complex at a single scale, kept as a reference construction.
/// Simplices are stored per dimension; the set is face-closed.
struct CechComplex {
    std::size_t n_vertices = 0;
    std::vector<std::array<VertexId, 2>> edges;     // |xi - xj| <= eps
    std::vector<std::array<VertexId, 3>> triangles; // enclosing-ball radius <= eps/2
    double eps = 0.0;
    int max_dim = 0;

    std::size_t simplex_count() const { return n_vertices + edges.size() + triangles.size(); }
};

/// Smallest eps at which some witness witnesses the simplex:
///   min over witnesses w of ( max_{l in s} D[l][w]  -  min_m D[m][w] ).
/// A witness shares a simplex at scale eps when every vertex is within eps
/// of being its closest landmark; this is the exact threshold of that
/// relation in its closed (<=) form.
double simplex_birth(const Simplex& s, const DistanceMatrix& d);

/// Build the full filtration: exactly the simplices of dimension <= max_dim
/// with simplex_birth <= eps_max, each tagged with its exact birth.
/// Face-closed by construction; entries sorted by (birth, dim, lex).
/// Requires max_dim >= 1, eps_max > 0 and at least max_dim + 1 landmarks.
WitnessFiltration build_filtration(const DistanceMatrix& d, int max_dim, double eps_max);

/// Grid mode: the simplex set at a single scale, i.e. entries with
/// birth <= eps. Order is inherited from the filtration.
std::vector<Simplex> complex_at(const WitnessFiltration& f, double eps);

/// The first scale at which some witness witnesses a stop_dim-simplex:
///   min over witnesses w of ( d_(stop_dim+1)(w) - d_(1)(w) )
/// where d_(i)(w) is the i-th smallest landmark distance from w. Needs no
/// materialized high-dimensional simplices, only sorted distance ranks.
/// With fewer than stop_dim + 1 landmarks the rule cannot fire and the
/// landmark-set diameter is returned instead.
double epsilon_max_rule(const DistanceMatrix& d, int stop_dim = 20);

/// Reference construction over all cloud points: edge {i,j} iff
/// |xi - xj| <= eps, triangle {i,j,k} iff the smallest ball enclosing the
/// three points has radius <= eps/2. max_dim above 2 is not supported.
CechComplex cech_complex(const PointCloud& cloud, double eps, int max_dim = 2);

/// Export: CSV rows (dim, vertices joined by ';', birth) in filtration order.
void write_filtration_csv(const std::string& path, const WitnessFiltration& f);

} // namespace topotone

#endif
