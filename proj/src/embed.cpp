#include "topotone/embed.hpp"
#include "topotone/error.hpp"
#include "topotone/format.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

namespace topotone {

PointCloud delay_embed(const TimeSeries& ts, const DelayParams& p) {
    if (p.tau < 1) throw InvalidArgumentError("tau must be >= 1");
    if (p.dim < 2) throw InvalidArgumentError("dim must be >= 2");
    const std::size_t span = static_cast<std::size_t>(p.dim - 1) * p.tau;
    if (ts.size() < span + 1)
        throw InsufficientDataError("series too short for delay embedding: need " +
                                    std::to_string(span + 1) + " samples, have " +
                                    std::to_string(ts.size()));

    PointCloud cloud;
    cloud.dim = p.dim;
    cloud.first_time = span;
    const std::size_t n_points = ts.size() - span;
    cloud.coords.reserve(n_points * p.dim);
    for (std::size_t t = span; t < ts.size(); ++t)
        for (int c = 0; c < p.dim; ++c)
            cloud.coords.push_back(ts.samples[t - static_cast<std::size_t>(c) * p.tau]);
    return cloud;
}

int suggest_tau(double rate, double freq) {
    if (rate <= 0 || freq <= 0)
        throw InvalidArgumentError("rate and freq must be positive");
    const long t = std::lround(rate / (freq * std::numbers::pi));
    return t < 1 ? 1 : static_cast<int>(t);
}

LandmarkSet select_landmarks(const PointCloud& cloud, std::size_t l) {
    if (l < 1 || l > cloud.size())
        throw InvalidArgumentError("landmark count must be in [1, " +
                                   std::to_string(cloud.size()) + "], got " +
                                   std::to_string(l));
    LandmarkSet lm;
    lm.indices.reserve(l);
    for (std::size_t k = 0; k < l; ++k)
        lm.indices.push_back(k * cloud.size() / l);
    return lm;
}

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        const double d = a[c] - b[c];
        acc += d * d;
    }
    return acc;
}

} // namespace

LandmarkSet select_landmarks_maxmin(const PointCloud& cloud, std::size_t l) {
    if (l < 1 || l > cloud.size())
        throw InvalidArgumentError("landmark count must be in [1, " +
                                   std::to_string(cloud.size()) + "], got " +
                                   std::to_string(l));
    std::vector<std::size_t> chosen{0};
    std::vector<char> used(cloud.size(), 0);
    used[0] = 1;
    std::vector<double> min_sq(cloud.size(), std::numeric_limits<double>::infinity());
    while (chosen.size() < l) {
        const auto last = cloud.point(chosen.back());
        std::size_t best = cloud.size();
        double best_d = -1.0;
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            if (used[i]) continue; // duplicate points would otherwise repeat
            min_sq[i] = std::min(min_sq[i], sq_dist(cloud.point(i), last));
            if (min_sq[i] > best_d) {
                best_d = min_sq[i];
                best = i;
            }
        }
        used[best] = 1;
        chosen.push_back(best);
    }
    std::sort(chosen.begin(), chosen.end());
    return LandmarkSet{std::move(chosen)};
}

DistanceMatrix distances(const PointCloud& cloud, const LandmarkSet& lm) {
    for (std::size_t i = 0; i < lm.size(); ++i) {
        if (lm.indices[i] >= cloud.size())
            throw InvalidArgumentError("landmark index out of range");
        if (i > 0 && lm.indices[i] <= lm.indices[i - 1])
            throw InvalidArgumentError("landmark indices must be strictly increasing");
    }
    DistanceMatrix d(lm.size(), cloud.size());
    for (std::size_t i = 0; i < lm.size(); ++i) {
        const auto li = cloud.point(lm.indices[i]);
        for (std::size_t j = 0; j < cloud.size(); ++j)
            d(i, j) = std::sqrt(sq_dist(li, cloud.point(j)));
    }
    return d;
}

void write_cloud_csv(const std::string& path, const PointCloud& cloud) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open file for writing: " + path);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        for (std::size_t c = 0; c < p.size(); ++c) {
            if (c) out << ',';
            out << format_double(p[c]);
        }
        out << '\n';
    }
    if (!out.good()) throw IoError("error writing file: " + path);
}

void write_distances_csv(const std::string& path, const DistanceMatrix& d) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open file for writing: " + path);
    for (std::size_t i = 0; i < d.rows(); ++i) {
        for (std::size_t j = 0; j < d.cols(); ++j) {
            if (j) out << ',';
            out << format_double(d(i, j));
        }
        out << '\n';
    }
    if (!out.good()) throw IoError("error writing file: " + path);
}

} // namespace topotone
