#include "topotone/embed.hpp"
#include "topotone/error.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

using namespace topotone;

namespace {

TimeSeries series_of(std::vector<double> samples, double rate = 100.0) {
    TimeSeries ts;
    ts.rate = rate;
    ts.samples = std::move(samples);
    return ts;
}

} // namespace

TEST_CASE("delay_embed: constant series gives a single repeated point") {
    const auto cloud = delay_embed(series_of(std::vector<double>(20, 3.5)), DelayParams{3, 2});
    CHECK(cloud.size() == 20 - 3);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        CHECK(cloud.point(i)[0] == 3.5);
        CHECK(cloud.point(i)[1] == 3.5);
    }
}

TEST_CASE("delay_embed: ramp example") {
    const auto cloud = delay_embed(series_of({0, 1, 2, 3, 4}), DelayParams{1, 2});
    REQUIRE(cloud.size() == 4);
    const double expect[4][2] = {{1, 0}, {2, 1}, {3, 2}, {4, 3}};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(cloud.point(i)[0] == expect[i][0]);
        CHECK(cloud.point(i)[1] == expect[i][1]);
    }
}

TEST_CASE("delay_embed: quarter-period delay of a sine lies on the unit circle") {
    std::vector<double> x(256 + 16);
    for (std::size_t t = 0; t < x.size(); ++t)
        x[t] = std::sin(2.0 * std::numbers::pi * t / 64.0);
    const auto cloud = delay_embed(series_of(std::move(x)), DelayParams{16, 2});
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        CHECK(std::abs(p[0] * p[0] + p[1] * p[1] - 1.0) < 1e-9);
    }
}

TEST_CASE("delay_embed: output length and error cases") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const int tau = 1 + static_cast<int>(rng() % 10);
        const int dim = 2 + static_cast<int>(rng() % 4);
        const std::size_t n = (dim - 1) * tau + 1 + rng() % 50;
        std::vector<double> x(n);
        for (double& v : x) v = static_cast<double>(rng() % 1000) / 1000.0;
        const auto cloud = delay_embed(series_of(std::move(x)), DelayParams{tau, dim});
        CHECK(cloud.size() == n - static_cast<std::size_t>(dim - 1) * tau);
        CHECK(cloud.first_time == static_cast<std::size_t>(dim - 1) * tau);
    }
    CHECK_THROWS_AS(delay_embed(series_of({1, 2, 3}), DelayParams{3, 2}), InsufficientDataError);
    CHECK_THROWS_AS(delay_embed(series_of({1, 2, 3}), DelayParams{0, 2}), InvalidArgumentError);
    CHECK_THROWS_AS(delay_embed(series_of({1, 2, 3}), DelayParams{1, 1}), InvalidArgumentError);
}

TEST_CASE("suggest_tau matches round(rate / (freq * pi))") {
    CHECK(suggest_tau(44100, 261.62) == 54); // 44100/(261.62*pi) = 53.66
    CHECK(suggest_tau(44100, 440.0) == 32);  // 31.91
    CHECK(suggest_tau(1000, 10000) == 1);    // clamped up from 0.03
    CHECK_THROWS_AS(suggest_tau(0, 440), InvalidArgumentError);
    CHECK_THROWS_AS(suggest_tau(44100, 0), InvalidArgumentError);
}

TEST_CASE("select_landmarks: even time spacing") {
    PointCloud cloud;
    cloud.dim = 2;

    SUBCASE("2000 points, 200 landmarks -> every 10th") {
        cloud.coords.assign(2000 * 2, 0.0);
        const auto lm = select_landmarks(cloud, 200);
        REQUIRE(lm.size() == 200);
        for (std::size_t k = 0; k < 200; ++k) CHECK(lm.indices[k] == 10 * k);
    }
    SUBCASE("every point when l equals cloud size") {
        cloud.coords.assign(7 * 2, 0.0);
        const auto lm = select_landmarks(cloud, 7);
        for (std::size_t k = 0; k < 7; ++k) CHECK(lm.indices[k] == k);
    }
    SUBCASE("floor arithmetic") {
        cloud.coords.assign(10 * 2, 0.0);
        const auto lm = select_landmarks(cloud, 3);
        CHECK(lm.indices == std::vector<std::size_t>{0, 3, 6});
    }
    SUBCASE("l above cloud size") {
        cloud.coords.assign(5 * 2, 0.0);
        CHECK_THROWS_AS(select_landmarks(cloud, 6), InvalidArgumentError);
    }
}

TEST_CASE("select_landmarks: strictly increasing with exactly l entries") {
    std::mt19937 rng(5);
    PointCloud cloud;
    cloud.dim = 2;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 500;
        const std::size_t l = 1 + rng() % n;
        cloud.coords.assign(n * 2, 0.0);
        const auto lm = select_landmarks(cloud, l);
        REQUIRE(lm.size() == l);
        for (std::size_t k = 1; k < l; ++k) CHECK(lm.indices[k] > lm.indices[k - 1]);
        CHECK(lm.indices.back() < n);
    }
}

TEST_CASE("select_landmarks_maxmin spreads over the cloud") {
    PointCloud cloud;
    cloud.dim = 2;
    for (int i = 0; i < 10; ++i) {
        cloud.coords.push_back(static_cast<double>(i));
        cloud.coords.push_back(0.0);
    }
    const auto lm = select_landmarks_maxmin(cloud, 3);
    CHECK(lm.indices == std::vector<std::size_t>{0, 4, 9});
}

TEST_CASE("select_landmarks_maxmin stays valid on clouds with repeated points") {
    // periodic trajectories revisit the same coordinates; selection must
    // still return distinct indices
    PointCloud cloud;
    cloud.dim = 2;
    for (int i = 0; i < 24; ++i) {
        cloud.coords.push_back(static_cast<double>(i % 4));
        cloud.coords.push_back(0.0);
    }
    const auto lm = select_landmarks_maxmin(cloud, 8);
    REQUIRE(lm.size() == 8);
    for (std::size_t k = 1; k < lm.size(); ++k) CHECK(lm.indices[k] > lm.indices[k - 1]);
    CHECK_NOTHROW(distances(cloud, lm));
}

TEST_CASE("distances: hand cases") {
    PointCloud cloud;
    cloud.dim = 2;
    cloud.coords = {0, 0, 1, 0, 0.4, 0};
    const auto d = distances(cloud, LandmarkSet{{0, 1}});
    REQUIRE(d.rows() == 2);
    REQUIRE(d.cols() == 3);
    CHECK(d(0, 0) == 0.0); // landmark is its own witness
    CHECK(d(1, 1) == 0.0);
    CHECK(d(0, 2) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(d(1, 2) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("distances: matches a direct double-loop recomputation") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    PointCloud cloud;
    cloud.dim = 3;
    cloud.coords.resize(8 * 3);
    for (double& c : cloud.coords) c = coord(rng);
    const LandmarkSet lm{{0, 2, 3, 5, 7}};
    const auto d = distances(cloud, lm);

    for (std::size_t i = 0; i < lm.size(); ++i)
        for (std::size_t j = 0; j < cloud.size(); ++j) {
            double acc = 0.0;
            for (std::size_t c = 0; c < 3; ++c) {
                const double diff =
                    cloud.coords[lm.indices[i] * 3 + c] - cloud.coords[j * 3 + c];
                acc += diff * diff;
            }
            CHECK(d(i, j) == std::sqrt(acc));
        }
}

TEST_CASE("cloud and distance-matrix CSV exports") {
    PointCloud cloud;
    cloud.dim = 2;
    cloud.coords = {0, 0, 1, 0, 0.5, 0.25};
    const auto d = distances(cloud, LandmarkSet{{0, 1}});

    const auto dir = std::filesystem::temp_directory_path();
    const std::string cloud_path = (dir / "tt_cloud.csv").string();
    const std::string dist_path = (dir / "tt_dist.csv").string();
    write_cloud_csv(cloud_path, cloud);
    write_distances_csv(dist_path, d);

    std::ifstream cin(cloud_path);
    std::string line;
    std::getline(cin, line);
    CHECK(line == "0,0");
    std::getline(cin, line);
    CHECK(line == "1,0");
    std::getline(cin, line);
    CHECK(line == "0.5,0.25");

    std::ifstream din(dist_path);
    std::getline(din, line); // landmark 0 row: 0, 1, |(0.5,0.25)|
    CHECK(line.substr(0, 4) == "0,1,");
    std::remove(cloud_path.c_str());
    std::remove(dist_path.c_str());
}

TEST_CASE("distances: every landmark row has a zero entry") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        PointCloud cloud;
        cloud.dim = 2;
        const std::size_t n = 5 + rng() % 40;
        cloud.coords.resize(n * 2);
        for (double& c : cloud.coords) c = coord(rng);
        const auto lm = select_landmarks(cloud, 1 + rng() % n);
        const auto d = distances(cloud, lm);
        for (std::size_t i = 0; i < d.rows(); ++i) {
            bool has_zero = false;
            for (std::size_t j = 0; j < d.cols(); ++j) has_zero |= d(i, j) == 0.0;
            CHECK(has_zero);
        }
    }
}
