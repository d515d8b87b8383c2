#include "topotone/filtration.hpp"
#include "topotone/error.hpp"
#include "topotone/format.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <thread>
#include <unordered_map>

namespace topotone {

namespace {

constexpr int kPackBits = 21; // vertex ids < 2^21 - 1 in the packed fast path

// Packed simplices of dimension <= 2: three 21-bit slots holding vertex
// id + 1, zero meaning "absent". Vertices ascending.
Simplex unpack3(uint64_t key) {
    Simplex s;
    for (int shift = 2 * kPackBits; shift >= 0; shift -= kPackBits) {
        const uint32_t v = (key >> shift) & ((1u << kPackBits) - 1);
        if (v) s.push_back(v - 1);
    }
    return s;
}

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept {
        std::size_t h = s.size();
        for (uint32_t v : s) h = h * 0x9E3779B97F4A7C15ull + v + 1;
        return h;
    }
};

// Open-addressing min-merge map for packed simplex keys (key 0 = empty slot;
// packed keys are always nonzero). The build loop is upsert-dominated, and
// this beats the node-based standard map severalfold there.
class BirthMap {
public:
    BirthMap() { rehash(1 << 13); }

    void upsert(uint64_t key, double birth) {
        if ((size_ + 1) * 2 > slots_.size()) rehash(slots_.size() * 2);
        std::size_t h = probe(key);
        while (slots_[h].key != 0) {
            if (slots_[h].key == key) {
                if (birth < slots_[h].birth) slots_[h].birth = birth;
                return;
            }
            h = (h + 1) & mask_;
        }
        slots_[h] = {key, birth};
        ++size_;
    }

    std::size_t size() const { return size_; }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (const auto& s : slots_)
            if (s.key != 0) fn(s.key, s.birth);
    }

private:
    struct Slot {
        uint64_t key;
        double birth;
    };

    std::size_t probe(uint64_t key) const {
        // multiply-shift: the top bits of the product are the well-mixed ones
        return static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ull) >> shift_);
    }

    void rehash(std::size_t capacity) {
        std::vector<Slot> old = std::move(slots_);
        slots_.assign(capacity, Slot{0, 0.0});
        mask_ = capacity - 1;
        shift_ = std::countl_zero(static_cast<uint64_t>(capacity)) + 1;
        size_ = 0;
        for (const auto& s : old)
            if (s.key != 0) {
                std::size_t h = probe(s.key);
                while (slots_[h].key != 0) h = (h + 1) & mask_;
                slots_[h] = s;
                ++size_;
            }
    }

    std::vector<Slot> slots_;
    std::size_t mask_ = 0;
    int shift_ = 64;
    std::size_t size_ = 0;
};

// Dense min-merge tables for the low dimensions: every vertex and (for
// moderate landmark counts) every edge gets a direct slot, leaving only
// triangles in the hash map.
struct LowDimBirths {
    std::vector<double> vertex; // [v]
    std::vector<double> edge;   // [lo * l + hi], empty when l is large
    std::size_t l = 0;

    explicit LowDimBirths(std::size_t landmark_count) : l(landmark_count) {
        const double inf = std::numeric_limits<double>::infinity();
        vertex.assign(l, inf);
        if (l <= 512) edge.assign(l * l, inf);
    }

    void merge(const LowDimBirths& o) {
        for (std::size_t i = 0; i < vertex.size(); ++i)
            vertex[i] = std::min(vertex[i], o.vertex[i]);
        for (std::size_t i = 0; i < edge.size(); ++i) edge[i] = std::min(edge[i], o.edge[i]);
    }
};

// Witness-major copy of the landmark distances plus per-witness minimum:
// the build loop walks one witness at a time and row-major access keeps it
// in cache. Tiled so both sides of the copy stay cache-resident.
struct WitnessView {
    std::vector<double> data;    // cols x rows
    std::vector<double> col_min; // nearest-landmark distance per witness
};

WitnessView transpose(const DistanceMatrix& d) {
    constexpr std::size_t kTile = 32;
    WitnessView v;
    v.data.resize(d.rows() * d.cols());
    v.col_min.assign(d.cols(), std::numeric_limits<double>::infinity());
    for (std::size_t ib = 0; ib < d.rows(); ib += kTile)
        for (std::size_t wb = 0; wb < d.cols(); wb += kTile) {
            const std::size_t imax = std::min(ib + kTile, d.rows());
            const std::size_t wmax = std::min(wb + kTile, d.cols());
            for (std::size_t i = ib; i < imax; ++i)
                for (std::size_t w = wb; w < wmax; ++w) {
                    const double x = d(i, w);
                    v.data[w * d.rows() + i] = x;
                    v.col_min[w] = std::min(v.col_min[w], x);
                }
        }
    return v;
}

void sort_entries(std::vector<FiltrationEntry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const FiltrationEntry& a, const FiltrationEntry& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        if (a.simplex.size() != b.simplex.size()) return a.simplex.size() < b.simplex.size();
        return a.simplex < b.simplex;
    });
}

// Landmarks within eps_max of being the witness's nearest, in distance-rank
// order. Only these can take part in simplices the witness contributes.
void in_range_order(std::span<const double> row, double dmin, double eps_max,
                    std::vector<std::pair<double, uint32_t>>& cand) {
    cand.clear();
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] - dmin <= eps_max) cand.emplace_back(row[i] - dmin, static_cast<uint32_t>(i));
    std::sort(cand.begin(), cand.end());
}

// Candidates of one witness. Every simplex the witness can witness at scale
// b has its farthest vertex at rank j; the rest come from the j nearer
// landmarks. Vertices and (when dense) edges take direct slots; triangles
// go through the hash map.
void scan_witness(const std::vector<std::pair<double, uint32_t>>& cand, int max_dim,
                  LowDimBirths& low, BirthMap& tri) {
    const bool dense_edges = !low.edge.empty();
    for (std::size_t j = 0; j < cand.size(); ++j) {
        const double b = cand[j].first;
        const uint32_t vj = cand[j].second;
        low.vertex[vj] = std::min(low.vertex[vj], b);
        if (max_dim < 1) continue;
        for (std::size_t a = 0; a < j; ++a) {
            const uint32_t va = cand[a].second;
            const uint32_t lo = std::min(va, vj), hi = std::max(va, vj);
            if (dense_edges) {
                double& slot = low.edge[static_cast<std::size_t>(lo) * low.l + hi];
                slot = std::min(slot, b);
            } else {
                tri.upsert(((static_cast<uint64_t>(lo) + 1) << kPackBits) | (hi + 1), b);
            }
            if (max_dim < 2) continue;
            const uint64_t plo = lo + 1, phi = hi + 1;
            for (std::size_t c = a + 1; c < j; ++c) {
                const uint64_t pc = cand[c].second + 1;
                uint64_t key;
                if (pc < plo) key = (pc << (2 * kPackBits)) | (plo << kPackBits) | phi;
                else if (pc > phi) key = (plo << (2 * kPackBits)) | (phi << kPackBits) | pc;
                else key = (plo << (2 * kPackBits)) | (pc << kPackBits) | phi;
                tri.upsert(key, b);
            }
        }
    }
}

WitnessFiltration build_small(const DistanceMatrix& d, int max_dim, double eps_max) {
    const WitnessView by_witness = transpose(d);

    // Witness scans are independent; shard them across threads and min-merge
    // the partial tables. The merge is commutative, so the result is the
    // same for any shard count or schedule.
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t n_shards = d.cols() >= 1024 ? std::min<std::size_t>(hw, 8) : 1;

    std::vector<LowDimBirths> low(n_shards, LowDimBirths(d.rows()));
    std::vector<BirthMap> tri(n_shards);
    const std::size_t chunk = (d.cols() + n_shards - 1) / n_shards;
    auto run_shard = [&](std::size_t shard) {
        std::vector<std::pair<double, uint32_t>> cand;
        const std::size_t end = std::min(d.cols(), (shard + 1) * chunk);
        for (std::size_t w = shard * chunk; w < end; ++w) {
            in_range_order({by_witness.data.data() + w * d.rows(), d.rows()},
                           by_witness.col_min[w], eps_max, cand);
            scan_witness(cand, max_dim, low[shard], tri[shard]);
        }
    };
    if (n_shards == 1) {
        run_shard(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t s = 1; s < n_shards; ++s) pool.emplace_back(run_shard, s);
        run_shard(0);
        for (auto& t : pool) t.join();
    }
    for (std::size_t s = 1; s < n_shards; ++s) {
        low[0].merge(low[s]);
        tri[s].for_each([&](uint64_t key, double b) { tri[0].upsert(key, b); });
    }

    // (birth, dim, key) ordering equals (birth, dim, lex vertices): within a
    // fixed dimension the packed key compares lexicographically
    struct Keyed {
        double birth;
        uint32_t dim;
        uint64_t key;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(low[0].l + tri[0].size());
    for (std::size_t v = 0; v < low[0].l; ++v)
        if (low[0].vertex[v] <= eps_max) keyed.push_back({low[0].vertex[v], 0, v + 1});
    if (!low[0].edge.empty())
        for (std::size_t lo = 0; lo < low[0].l; ++lo)
            for (std::size_t hi = lo + 1; hi < low[0].l; ++hi) {
                const double b = low[0].edge[lo * low[0].l + hi];
                if (b <= eps_max)
                    keyed.push_back(
                        {b, 1, ((static_cast<uint64_t>(lo) + 1) << kPackBits) | (hi + 1)});
            }
    tri[0].for_each([&](uint64_t key, double b) {
        const uint32_t dim = (key >> kPackBits ? 1u : 0u) + (key >> (2 * kPackBits) ? 1u : 0u);
        keyed.push_back({b, dim, key});
    });
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.key < b.key;
    });

    WitnessFiltration f;
    f.entries.reserve(keyed.size());
    for (const auto& k : keyed) f.entries.push_back({unpack3(k.key), k.birth});
    return f;
}

void enumerate_subsets(const std::vector<uint32_t>& order, std::size_t j, int max_extra,
                       std::size_t from, Simplex& scratch,
                       const std::function<void(const Simplex&)>& emit) {
    emit(scratch);
    if (max_extra == 0) return;
    for (std::size_t a = from; a < j; ++a) {
        scratch.push_back(order[a]);
        enumerate_subsets(order, j, max_extra - 1, a + 1, scratch, emit);
        scratch.pop_back();
    }
}

WitnessFiltration build_general(const DistanceMatrix& d, int max_dim, double eps_max) {
    std::unordered_map<Simplex, double, SimplexHash> birth;
    const WitnessView by_witness = transpose(d);
    std::vector<std::pair<double, uint32_t>> cand;
    std::vector<uint32_t> order;
    Simplex scratch;

    for (std::size_t w = 0; w < d.cols(); ++w) {
        in_range_order({by_witness.data.data() + w * d.rows(), d.rows()},
                       by_witness.col_min[w], eps_max, cand);
        order.resize(cand.size());
        for (std::size_t i = 0; i < cand.size(); ++i) order[i] = cand[i].second;
        for (std::size_t j = 0; j < cand.size(); ++j) {
            const double b = cand[j].first;
            scratch.assign(1, order[j]);
            enumerate_subsets(order, j, max_dim, 0, scratch, [&](const Simplex& raw) {
                Simplex s = raw;
                std::sort(s.begin(), s.end());
                auto [it, inserted] = birth.try_emplace(std::move(s), b);
                if (!inserted && b < it->second) it->second = b;
            });
        }
    }

    WitnessFiltration f;
    f.entries.reserve(birth.size());
    for (const auto& [s, b] : birth) f.entries.push_back({s, b});
    sort_entries(f.entries);
    return f;
}

} // namespace

double simplex_birth(const Simplex& s, const DistanceMatrix& d) {
    if (s.empty()) throw InvalidArgumentError("simplex must be nonempty");
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= d.rows()) throw InvalidArgumentError("simplex vertex out of range");
        if (i > 0 && s[i] <= s[i - 1])
            throw InvalidArgumentError("simplex vertices must be strictly increasing");
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t w = 0; w < d.cols(); ++w) {
        double dmin = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < d.rows(); ++m) dmin = std::min(dmin, d(m, w));
        double dmax = 0.0;
        for (uint32_t v : s) dmax = std::max(dmax, d(v, w));
        best = std::min(best, dmax - dmin);
    }
    return best;
}

WitnessFiltration build_filtration(const DistanceMatrix& d, int max_dim, double eps_max) {
    if (max_dim < 1) throw InvalidArgumentError("max_dim must be >= 1");
    if (!(eps_max > 0))
        throw InvalidArgumentError("eps_max must be positive (degenerate scale range)");
    if (d.rows() < static_cast<std::size_t>(max_dim) + 1)
        throw InvalidArgumentError("need at least max_dim + 1 landmarks, have " +
                                   std::to_string(d.rows()));
    if (d.cols() == 0) throw InvalidArgumentError("no witnesses");

    WitnessFiltration f = (max_dim <= 2 && d.rows() < (1u << kPackBits) - 1)
                              ? build_small(d, max_dim, eps_max)
                              : build_general(d, max_dim, eps_max);
    f.eps_max = eps_max;
    f.max_dim = max_dim;
    f.vertex_count = d.rows();
    return f;
}

std::vector<Simplex> complex_at(const WitnessFiltration& f, double eps) {
    std::vector<Simplex> out;
    for (const auto& e : f.entries) {
        if (e.birth > eps) continue;
        out.push_back(e.simplex);
    }
    return out;
}

namespace {

// Landmark-set diameter recovered from the distance matrix: when landmarks
// are witnesses themselves, landmark i appears as a zero column, and that
// column holds all landmark-to-landmark-i distances.
double landmark_diameter(const DistanceMatrix& d) {
    double diam = 0.0;
    bool found_any = false;
    for (std::size_t i = 0; i < d.rows(); ++i) {
        for (std::size_t w = 0; w < d.cols(); ++w) {
            if (d(i, w) != 0.0) continue;
            for (std::size_t k = 0; k < d.rows(); ++k) diam = std::max(diam, d(k, w));
            found_any = true;
            break;
        }
    }
    if (!found_any)
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t w = 0; w < d.cols(); ++w) diam = std::max(diam, d(i, w));
    return diam;
}

} // namespace

double epsilon_max_rule(const DistanceMatrix& d, int stop_dim) {
    if (stop_dim < 1) throw InvalidArgumentError("stop_dim must be >= 1");
    if (d.rows() == 0 || d.cols() == 0) throw InvalidArgumentError("empty distance matrix");

    const std::size_t need = static_cast<std::size_t>(stop_dim) + 1;
    if (d.rows() < need) return landmark_diameter(d);

    double best = std::numeric_limits<double>::infinity();
    std::vector<double> col(d.rows());
    for (std::size_t w = 0; w < d.cols(); ++w) {
        for (std::size_t i = 0; i < d.rows(); ++i) col[i] = d(i, w);
        std::nth_element(col.begin(), col.begin() + (need - 1), col.end());
        const double d_high = col[need - 1];
        const double d_low = *std::min_element(col.begin(), col.begin() + need);
        best = std::min(best, d_high - d_low);
    }
    return best;
}

namespace {

double sq(double x) { return x * x; }

double sq_dist(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) acc += sq(a[c] - b[c]);
    return acc;
}

// Smallest enclosing ball of three points has radius <= eps/2?
// Obtuse/degenerate triangles are enclosed by the ball on the longest side;
// acute ones by the circumball. All comparisons in squared terms.
bool seb_within(std::span<const double> p0, std::span<const double> p1,
                std::span<const double> p2, double eps) {
    const double a2 = sq_dist(p1, p2);
    const double b2 = sq_dist(p0, p2);
    const double c2 = sq_dist(p0, p1);
    const double m = std::max({a2, b2, c2});
    const double eps2 = eps * eps;
    if (m >= a2 + b2 + c2 - m) return m <= eps2;
    // acute: circumradius^2 = a2*b2*c2 / (4 * cross2), cross2 = |u|^2|v|^2 - (u.v)^2
    double uu = 0.0, vv = 0.0, uv = 0.0;
    for (std::size_t c = 0; c < p0.size(); ++c) {
        const double u = p1[c] - p0[c];
        const double v = p2[c] - p0[c];
        uu += u * u;
        vv += v * v;
        uv += u * v;
    }
    const double cross2 = uu * vv - uv * uv;
    return a2 * b2 * c2 <= eps2 * cross2;
}

} // namespace

CechComplex cech_complex(const PointCloud& cloud, double eps, int max_dim) {
    if (max_dim > 2) throw UnsupportedError("cech_complex supports max_dim <= 2");
    if (max_dim < 0) throw InvalidArgumentError("max_dim must be >= 0");
    if (!(eps > 0)) throw InvalidArgumentError("eps must be positive");

    CechComplex cx;
    cx.n_vertices = cloud.size();
    cx.eps = eps;
    cx.max_dim = max_dim;
    const std::size_t n = cloud.size();
    if (max_dim < 1 || n < 2) return cx;

    const double eps2 = eps * eps;
    // forward adjacency: neighbors with a larger index, ascending
    std::vector<std::vector<VertexId>> fwd(max_dim >= 2 ? n : 0);

    for (std::size_t i = 0; i < n; ++i) {
        const auto pi = cloud.point(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (sq_dist(pi, cloud.point(j)) > eps2) continue;
            cx.edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j)});
            if (max_dim >= 2) fwd[i].push_back(static_cast<VertexId>(j));
        }
    }

    if (max_dim >= 2) {
        // triangle candidates are the common forward neighbors of each edge
        for (const auto& e : cx.edges) {
            const auto& a = fwd[e[0]];
            const auto& b = fwd[e[1]];
            const auto pi = cloud.point(e[0]);
            const auto pj = cloud.point(e[1]);
            std::size_t x = 0, y = 0;
            while (x < a.size() && y < b.size()) {
                if (a[x] < b[y]) ++x;
                else if (a[x] > b[y]) ++y;
                else {
                    if (seb_within(pi, pj, cloud.point(a[x]), eps))
                        cx.triangles.push_back({e[0], e[1], a[x]});
                    ++x;
                    ++y;
                }
            }
        }
    }
    return cx;
}

void write_filtration_csv(const std::string& path, const WitnessFiltration& f) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << "dim,vertices,birth\n";
    for (const auto& e : f.entries) {
        out << (e.simplex.size() - 1) << ',';
        for (std::size_t i = 0; i < e.simplex.size(); ++i) {
            if (i) out << ';';
            out << e.simplex[i];
        }
        out << ',' << format_double(e.birth) << '\n';
    }
    if (!out.good()) throw IoError("error writing file: " + path);
}

} // namespace topotone
