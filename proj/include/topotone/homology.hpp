#ifndef TOPOTONE_HOMOLOGY_HPP
#define TOPOTONE_HOMOLOGY_HPP

#include "topotone/filtration.hpp"

#include <string>
#include <vector>

namespace topotone {

/// One homology class: born at `birth`, dead at `death`. Essential classes
/// are still alive at the filtration cap; they carry death = eps_max and
/// the essential flag.
struct PersistencePoint {
    int k = 0;
    double birth = 0.0;
    double death = 0.0;
    bool essential = false;

    bool zero_persistence() const { return !essential && birth == death; }
};

struct PersistenceDiagram {
    std::vector<PersistencePoint> points;
    double eps_max = 0.0;

    /// Number of dimension-k classes alive at scale eps.
    std::size_t betti(double eps, int k) const {
        std::size_t n = 0;
        for (const auto& p : points)
            if (p.k == k && p.birth <= eps && (p.essential || p.death > eps)) ++n;
        return n;
    }
};

/// Persistent homology of the filtration over the two-element field,
/// for dimensions 0..max_k (max_k < f.max_dim). Boundary-matrix column
/// reduction with the clearing optimization; zero-persistence pairs are
/// kept in the result (they are flagged, and dropped only at export).
/// Throws IntegrityError if the input is not face-closed with monotone
/// births.
PersistenceDiagram persistence(const WitnessFiltration& f, int max_k);

/// Betti number of the complex {s : birth(s) <= eps} computed independently
/// of persistence(): rank-nullity on the boundary matrices of the
/// thresholded complex. Serves as the oracle for persistence().
/// Requires 0 <= k < f.max_dim.
std::size_t betti_at(const WitnessFiltration& f, double eps, int k);

/// Export: CSV rows (k, birth, death, essential). Essential classes are
/// written with death = eps_max and essential = 1. Zero-persistence points
/// are dropped unless keep_zero is set.
void write_diagram_csv(const std::string& path, const PersistenceDiagram& d,
                       bool keep_zero = false);

} // namespace topotone

#endif
