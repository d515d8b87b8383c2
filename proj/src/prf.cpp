#include "topotone/prf.hpp"
#include "topotone/error.hpp"
#include "topotone/format.hpp"

#include <cmath>
#include <fstream>

namespace topotone {

PRFGrid prf(const PersistenceDiagram& d, int k, int grid) {
    if (grid < 2) throw InvalidArgumentError("grid resolution must be >= 2");
    if (!(d.eps_max > 0)) throw InvalidArgumentError("diagram eps_max must be positive");

    PRFGrid g;
    g.resolution = grid;
    g.eps_max = d.eps_max;
    g.values.assign(static_cast<std::size_t>(grid) * grid, 0.0);
    const double h = g.step();

    for (const auto& p : d.points) {
        if (p.k != k) continue;
        // contributes 1 to every (a_i, b_j) with birth <= a_i, b_j < death, a_i <= b_j
        for (int i = 0; i < grid; ++i) {
            const double a = i * h;
            if (a < p.birth) continue;
            for (int j = i; j < grid; ++j) {
                const double b = j * h;
                if (!p.essential && b >= p.death) break;
                g.at(i, j) += 1.0;
            }
        }
    }
    return g;
}

double l2_distance(const PRFGrid& f, const PRFGrid& g) {
    if (!f.same_shape(g))
        throw InvalidArgumentError("PRF grids must share resolution and eps_max");
    const double cell = f.step() * f.step();
    double acc = 0.0;
    for (int i = 0; i < f.resolution; ++i)
        for (int j = i; j < f.resolution; ++j) {
            const double diff = f.at(i, j) - g.at(i, j);
            acc += diff * diff * (i == j ? 0.5 * cell : cell);
        }
    return std::sqrt(acc);
}

PRFGrid mean_prf(const std::vector<PRFGrid>& fs) {
    if (fs.empty()) throw InvalidArgumentError("mean of zero PRF grids");
    PRFGrid out = fs.front();
    for (std::size_t n = 1; n < fs.size(); ++n) {
        if (!fs[n].same_shape(out))
            throw InvalidArgumentError("PRF grids must share resolution and eps_max");
        for (std::size_t c = 0; c < out.values.size(); ++c) out.values[c] += fs[n].values[c];
    }
    for (double& v : out.values) v /= static_cast<double>(fs.size());
    return out;
}

double sigma(const std::vector<PRFGrid>& fs, const PRFGrid& mean) {
    if (fs.size() < 2) throw InvalidArgumentError("sigma needs at least two grids");
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& f : fs) {
        const double d = l2_distance(f, mean);
        sum += d;
        sum_sq += d * d;
    }
    const double n = static_cast<double>(fs.size());
    const double var = sum_sq / n - (sum / n) * (sum / n);
    return std::sqrt(std::max(0.0, var));
}

void write_prf_csv(const std::string& path, const PRFGrid& g) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << "a,b,value\n";
    const double h = g.step();
    for (int i = 0; i < g.resolution; ++i)
        for (int j = 0; j < g.resolution; ++j)
            out << format_double(i * h) << ',' << format_double(j * h) << ','
                << format_double(g.at(i, j)) << '\n';
    if (!out.good()) throw IoError("error writing file: " + path);
}

} // namespace topotone
