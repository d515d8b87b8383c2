#include "topotone/homology.hpp"
#include "topotone/error.hpp"
#include "topotone/format.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

namespace topotone {

namespace {

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept {
        std::size_t h = s.size();
        for (uint32_t v : s) h = h * 0x9E3779B97F4A7C15ull + v + 1;
        return h;
    }
};

using PositionMap = std::unordered_map<Simplex, std::size_t, SimplexHash>;

bool canonical_before(const FiltrationEntry& a, const FiltrationEntry& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    if (a.simplex.size() != b.simplex.size()) return a.simplex.size() < b.simplex.size();
    return a.simplex < b.simplex;
}

// Sorted symmetric difference: a ^= b.
void add_column(std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                std::vector<std::size_t>& scratch) {
    scratch.clear();
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(scratch));
    a.swap(scratch);
}

// Boundary of the simplex at `pos`, as sorted filtration positions.
// Missing or later-born facets mean the filtration is broken.
std::vector<std::size_t> boundary_positions(const std::vector<const FiltrationEntry*>& order,
                                            const PositionMap& pos, std::size_t p) {
    const Simplex& s = order[p]->simplex;
    std::vector<std::size_t> bd;
    bd.reserve(s.size());
    Simplex facet(s.size() - 1);
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
        std::size_t t = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (i != drop) facet[t++] = s[i];
        auto it = pos.find(facet);
        if (it == pos.end())
            throw IntegrityError("filtration is not face-closed: missing facet");
        if (order[it->second]->birth > order[p]->birth)
            throw IntegrityError("filtration births are not monotone on faces");
        bd.push_back(it->second);
    }
    std::sort(bd.begin(), bd.end());
    return bd;
}

} // namespace

PersistenceDiagram persistence(const WitnessFiltration& f, int max_k) {
    if (max_k < 0) throw InvalidArgumentError("max_k must be >= 0");
    if (max_k >= f.max_dim)
        throw InvalidArgumentError("max_k must be < filtration max_dim");

    // Canonical order (birth, dim, lex) makes the result independent of the
    // input's ordering of same-birth simplices.
    std::vector<const FiltrationEntry*> order;
    order.reserve(f.entries.size());
    for (const auto& e : f.entries) order.push_back(&e);
    std::sort(order.begin(), order.end(),
              [](const FiltrationEntry* a, const FiltrationEntry* b) {
                  return canonical_before(*a, *b);
              });

    const std::size_t m = order.size();
    PositionMap pos;
    pos.reserve(m);
    for (std::size_t p = 0; p < m; ++p) {
        if (!pos.emplace(order[p]->simplex, p).second)
            throw IntegrityError("duplicate simplex in filtration");
    }

    // Full validation up front; the clearing optimization below skips the
    // boundaries of some columns, so this cannot be left to the reduction.
    for (std::size_t p = 0; p < m; ++p) {
        const Simplex& s = order[p]->simplex;
        if (s.size() < 2) continue;
        Simplex facet(s.size() - 1);
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            std::size_t t = 0;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != drop) facet[t++] = s[i];
            auto it = pos.find(facet);
            if (it == pos.end())
                throw IntegrityError("filtration is not face-closed: missing facet");
            if (order[it->second]->birth > order[p]->birth)
                throw IntegrityError("filtration births are not monotone on faces");
        }
    }

    std::vector<std::vector<std::size_t>> per_dim(static_cast<std::size_t>(f.max_dim) + 1);
    for (std::size_t p = 0; p < m; ++p) {
        const std::size_t dim = order[p]->simplex.size() - 1;
        if (dim > static_cast<std::size_t>(f.max_dim))
            throw IntegrityError("simplex above filtration max_dim");
        per_dim[dim].push_back(p);
    }

    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> pivot_owner(m, npos);
    std::vector<std::size_t> death_of(m, npos); // creator position -> destroyer position
    std::vector<uint8_t> cleared(m, 0), is_creator(m, 0);
    std::vector<std::vector<std::size_t>> cols(m);
    std::vector<std::size_t> scratch;

    // Reduce top dimension first; its pivots clear creator columns below.
    for (int d = max_k + 1; d >= 1; --d) {
        for (std::size_t p : per_dim[d]) {
            if (cleared[p]) {
                is_creator[p] = 1;
                continue;
            }
            auto col = boundary_positions(order, pos, p);
            while (!col.empty()) {
                const std::size_t piv = col.back();
                const std::size_t owner = pivot_owner[piv];
                if (owner == npos) break;
                add_column(col, cols[owner], scratch);
            }
            if (col.empty()) {
                is_creator[p] = 1;
            } else {
                const std::size_t piv = col.back();
                pivot_owner[piv] = p;
                death_of[piv] = p;
                cleared[piv] = 1;
                cols[p] = std::move(col);
            }
        }
        for (std::size_t p : per_dim[d]) { // same-dim columns no longer needed
            cols[p].clear();
            cols[p].shrink_to_fit();
        }
    }
    for (std::size_t p : per_dim[0]) is_creator[p] = 1;

    PersistenceDiagram diagram;
    diagram.eps_max = f.eps_max;
    for (int k = 0; k <= max_k; ++k) {
        for (std::size_t p : per_dim[k]) {
            if (!is_creator[p]) continue;
            PersistencePoint pt;
            pt.k = k;
            pt.birth = order[p]->birth;
            if (death_of[p] != npos) {
                pt.death = order[death_of[p]]->birth;
            } else {
                pt.death = f.eps_max;
                pt.essential = true;
            }
            diagram.points.push_back(pt);
        }
    }
    std::sort(diagram.points.begin(), diagram.points.end(),
              [](const PersistencePoint& a, const PersistencePoint& b) {
                  if (a.k != b.k) return a.k < b.k;
                  if (a.birth != b.birth) return a.birth < b.birth;
                  if (a.death != b.death) return a.death < b.death;
                  return a.essential < b.essential;
              });
    return diagram;
}

namespace {

// GF(2) rank by column elimination; columns are sorted row-id lists.
std::size_t gf2_rank(std::vector<std::vector<std::size_t>> cols, std::size_t n_rows) {
    std::vector<std::size_t> pivot_owner(n_rows, static_cast<std::size_t>(-1));
    std::vector<std::size_t> scratch;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        auto& col = cols[c];
        while (!col.empty()) {
            const std::size_t piv = col.back();
            const std::size_t owner = pivot_owner[piv];
            if (owner == static_cast<std::size_t>(-1)) break;
            add_column(col, cols[owner], scratch);
        }
        if (!col.empty()) {
            pivot_owner[col.back()] = c;
            ++rank;
        }
    }
    return rank;
}

} // namespace

std::size_t betti_at(const WitnessFiltration& f, double eps, int k) {
    if (k < 0 || k >= f.max_dim)
        throw InvalidArgumentError("k must be in [0, filtration max_dim)");
    if (eps < 0 || eps > f.eps_max)
        throw InvalidArgumentError("eps must be in [0, eps_max]");

    // Index the thresholded complex per dimension.
    std::unordered_map<Simplex, std::size_t, SimplexHash> id_km1, id_k;
    std::vector<const Simplex*> k_simps, kp1_simps;
    for (const auto& e : f.entries) {
        if (e.birth > eps) continue;
        const int dim = static_cast<int>(e.simplex.size()) - 1;
        if (dim == k - 1) id_km1.emplace(e.simplex, id_km1.size());
        else if (dim == k) {
            id_k.emplace(e.simplex, id_k.size());
            k_simps.push_back(&e.simplex);
        } else if (dim == k + 1) kp1_simps.push_back(&e.simplex);
    }

    auto boundary_cols = [](const std::vector<const Simplex*>& simps, const auto& row_ids) {
        std::vector<std::vector<std::size_t>> cols;
        cols.reserve(simps.size());
        for (const Simplex* s : simps) {
            std::vector<std::size_t> col;
            Simplex facet(s->size() - 1);
            for (std::size_t drop = 0; drop < s->size(); ++drop) {
                std::size_t t = 0;
                for (std::size_t i = 0; i < s->size(); ++i)
                    if (i != drop) facet[t++] = (*s)[i];
                auto it = row_ids.find(facet);
                if (it == row_ids.end())
                    throw IntegrityError("complex is not face-closed at this scale");
                col.push_back(it->second);
            }
            std::sort(col.begin(), col.end());
            cols.push_back(std::move(col));
        }
        return cols;
    };

    const std::size_t n_k = k_simps.size();
    const std::size_t rank_dk =
        (k == 0) ? 0 : gf2_rank(boundary_cols(k_simps, id_km1), id_km1.size());
    const std::size_t rank_dk1 = gf2_rank(boundary_cols(kp1_simps, id_k), id_k.size());
    return n_k - rank_dk - rank_dk1;
}

void write_diagram_csv(const std::string& path, const PersistenceDiagram& d, bool keep_zero) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << "k,birth,death,essential\n";
    for (const auto& p : d.points) {
        if (p.zero_persistence() && !keep_zero) continue;
        out << p.k << ',' << format_double(p.birth) << ',' << format_double(p.death) << ','
            << (p.essential ? 1 : 0) << '\n';
    }
    if (!out.good()) throw IoError("error writing file: " + path);
}

} // namespace topotone
