#ifndef TOPOTONE_EMBED_HPP
#define TOPOTONE_EMBED_HPP

#include "topotone/ingest.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace topotone {

/// Delay-coordinate reconstruction parameters.
struct DelayParams {
    int tau = 1; // delay in samples, >= 1
    int dim = 2; // reconstruction dimension d_E, >= 2
};

/// Ordered set of reconstruction-space points; order preserves time.
struct PointCloud {
    std::vector<double> coords; // row-major, size() * dim values
    std::size_t dim = 0;
    std::size_t first_time = 0; // source time index of point 0

    std::size_t size() const { return dim ? coords.size() / dim : 0; }
    std::span<const double> point(std::size_t i) const {
        return {coords.data() + i * dim, dim};
    }
};

/// Strictly increasing point-cloud indices of the chosen landmarks.
struct LandmarkSet {
    std::vector<std::size_t> indices;
    std::size_t size() const { return indices.size(); }
};

/// Landmark-to-witness Euclidean distances, one row per landmark.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), d_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; } // number of landmarks
    std::size_t cols() const { return cols_; } // number of witnesses
    double operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
    std::span<const double> row(std::size_t i) const { return {d_.data() + i * cols_, cols_}; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> d_;
};

/// Delay embedding: one point (x_t, x_{t-tau}, ..., x_{t-(dim-1)tau}) for
/// each t from (dim-1)*tau to N-1. Output has N - (dim-1)*tau points.
PointCloud delay_embed(const TimeSeries& ts, const DelayParams& p);

/// Delay in samples for a tone of the given frequency: round(rate / (freq * pi)),
/// clamped below at 1. The continuous-time value is 1/(freq*pi) seconds;
/// rounding to integer samples introduces a small phase error.
int suggest_tau(double rate, double freq);

/// Evenly spaced landmarks in time order: indices floor(k*|cloud|/l).
LandmarkSet select_landmarks(const PointCloud& cloud, std::size_t l);

/// Greedy max-min (farthest point) landmark selection, seeded at point 0.
/// Offered for experimentation; even time spacing is the default.
LandmarkSet select_landmarks_maxmin(const PointCloud& cloud, std::size_t l);

/// Full landmark-to-witness Euclidean distance matrix.
DistanceMatrix distances(const PointCloud& cloud, const LandmarkSet& lm);

/// Debug exports: one CSV row per point / per landmark.
void write_cloud_csv(const std::string& path, const PointCloud& cloud);
void write_distances_csv(const std::string& path, const DistanceMatrix& d);

} // namespace topotone

#endif
