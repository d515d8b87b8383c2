#include "topotone/classify.hpp"
#include "topotone/error.hpp"
#include "topotone/synth.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

using namespace topotone;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

PipelineConfig small_config() {
    PipelineConfig cfg;
    cfg.tau = suggest_tau(44100, 440);
    cfg.dim = 2;
    cfg.landmarks = 60;
    cfg.grid = 32;
    return cfg;
}

// Disjoint windows of one noisy tone; noise makes the windows distinct.
std::vector<TimeSeries> tone_windows(ToneKind kind, int count, double freq = 440.0,
                                     std::uint64_t seed = 1, double noise = 0.02) {
    const double duration = 0.05 * count + 0.01;
    const auto ts = synth_tone({kind, freq, duration, 44100.0, 0, noise, seed});
    return windows(ts, WindowSpec{0.05, count, true});
}

// Independent 0.05 s tones with per-window noise seeds and up to 0.5%
// frequency jitter: generic training/test material with nonzero spread.
std::vector<TimeSeries> jittered_windows(ToneKind kind, int count, std::uint64_t seed0,
                                         double noise = 0.04) {
    std::mt19937_64 rng(seed0);
    std::vector<TimeSeries> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double u = static_cast<double>(rng() >> 11) * 0x1p-52 - 1.0; // [-1, 1)
        out.push_back(synth_tone(
            {kind, 440.0 * (1.0 + 0.005 * u), 0.05, 44100.0, 0, noise, seed0 + 1000 + i}));
    }
    return out;
}

} // namespace

TEST_CASE("train_prf: identical windows give sigma zero and mean equal to each") {
    const auto one = synth_tone({ToneKind::Clarinet, 440.0, 0.05, 44100.0});
    const std::vector<TimeSeries> ws{one, one, one};
    const auto model = train_prf(ws, small_config());
    CHECK(model.sigma == 0.0);
    CHECK(model.mean.values == window_prf(one, model.config, model.config.eps_max).values);
    CHECK(model.config.eps_max > 0.0);
}

TEST_CASE("train_prf: mismatched windows and short lists are rejected") {
    auto ws = tone_windows(ToneKind::Clarinet, 3);
    CHECK_THROWS_AS(train_prf({ws[0]}, small_config()), InvalidArgumentError);

    ws[1].samples.pop_back();
    CHECK_THROWS_WITH_AS(train_prf(ws, small_config()), doctest::Contains("window 1"),
                         TrainingError);

    // a window too short for the embedding names itself
    std::vector<TimeSeries> tiny(3);
    for (auto& w : tiny) {
        w.rate = 44100;
        w.samples.assign(10, 0.5);
    }
    CHECK_THROWS_AS(train_prf(tiny, small_config()), TrainingError);
}

TEST_CASE("membership: training sample accepted at large k, rejected at k = 0") {
    const auto ws = jittered_windows(ToneKind::Clarinet, 6, 1);
    const auto model = train_prf(ws, small_config());
    REQUIRE(model.sigma > 0.0); // generic training material has spread

    const auto wide = membership(model, ws[0], 1000.0);
    CHECK(wide.member);
    CHECK(wide.distance >= 0.0);

    const auto zero = membership(model, ws[0], 0.0);
    CHECK_FALSE(zero.member); // strict inequality against 0
    CHECK(zero.threshold == 0.0);

    CHECK_THROWS_AS(membership(model, ws[0], -1.0), InvalidArgumentError);
}

TEST_CASE("membership: acceptance region is monotone in k") {
    const auto ws = jittered_windows(ToneKind::Clarinet, 5, 2);
    const auto model = train_prf(ws, small_config());
    const auto sample = jittered_windows(ToneKind::Clarinet, 1, 99)[0];

    bool was_member = false;
    for (double k : default_k_grid(25)) {
        const bool now = membership(model, sample, k).member;
        if (was_member) CHECK(now);
        was_member = now;
    }
}

TEST_CASE("membership: sample must match the model window") {
    const auto ws = tone_windows(ToneKind::Clarinet, 3);
    const auto model = train_prf(ws, small_config());

    TimeSeries wrong_len = ws[0];
    wrong_len.samples.pop_back();
    CHECK_THROWS_AS(membership(model, wrong_len, 1.0), InvalidArgumentError);

    TimeSeries wrong_rate = ws[0];
    wrong_rate.rate = 48000;
    CHECK_THROWS_AS(membership(model, wrong_rate, 1.0), InvalidArgumentError);
}

TEST_CASE("PRF pipeline is invariant under amplitude scaling") {
    const auto base = tone_windows(ToneKind::Viol, 1, 440.0, 5)[0];
    const auto cfg = small_config();

    // eps cap fixed across variants so the grids are comparable
    const auto cloud = delay_embed(normalize_amplitude(base), DelayParams{cfg.tau, cfg.dim});
    const auto d = distances(cloud, select_landmarks(cloud, cfg.landmarks));
    const double eps = epsilon_max_rule(d);

    const auto reference = window_prf(base, cfg, eps);
    for (double scale : {2.0, 0.5, 3.0, 0.1}) {
        TimeSeries scaled = base;
        for (double& s : scaled.samples) s *= scale;
        CHECK(window_prf(scaled, cfg, eps).values == reference.values);
    }
}

TEST_CASE("fft_features: peak lands on the grid frequency nearest the tone") {
    const auto ts = synth_tone({ToneKind::Sine, 440.0, 0.05, 44100.0});
    const auto features = fft_features(ts);
    REQUIRE(features.size() == 2000);

    const auto grid = fft_frequency_grid();
    CHECK(grid.front() == doctest::Approx(10.0));
    CHECK(grid.back() == doctest::Approx(10000.0));

    std::size_t nearest = 0, peak = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (std::abs(grid[i] - 440.0) < std::abs(grid[nearest] - 440.0)) nearest = i;
        if (features[i] > features[peak]) peak = i;
    }
    CHECK(peak == nearest);
}

TEST_CASE("fft_features: zero signal and unsupported rate") {
    TimeSeries zeros;
    zeros.rate = 44100;
    zeros.samples.assign(2205, 0.0);
    for (double v : fft_features(zeros)) CHECK(v == 0.0);

    TimeSeries slow;
    slow.rate = 16000;
    slow.samples.assign(800, 0.1);
    CHECK_THROWS_AS(fft_features(slow), UnsupportedError);
}

TEST_CASE("fft taper: changes features, keeps the peak, round-trips in models") {
    const auto ts = synth_tone({ToneKind::Sine, 440.0, 0.05, 44100.0});
    const auto plain = fft_features(ts, false);
    const auto tapered = fft_features(ts, true);
    CHECK(plain != tapered);

    const auto grid = fft_frequency_grid();
    std::size_t nearest = 0, peak = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (std::abs(grid[i] - 440.0) < std::abs(grid[nearest] - 440.0)) nearest = i;
        if (tapered[i] > tapered[peak]) peak = i;
    }
    CHECK(peak == nearest);

    auto cfg = small_config();
    cfg.fft_taper = true;
    const auto ws = jittered_windows(ToneKind::Clarinet, 3, 21);
    const auto model = train_fft(ws, cfg);
    const std::string path = temp_path("tt_model_taper.csv");
    save_fft_model(path, model);
    const auto loaded = load_fft_model(path);
    CHECK(loaded.config.fft_taper);
    CHECK(membership_fft(loaded, ws[0], 1.0).distance ==
          membership_fft(model, ws[0], 1.0).distance);
    std::remove(path.c_str());
}

TEST_CASE("periodogram satisfies the energy identity") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    TimeSeries ts;
    ts.rate = 44100;
    ts.samples.resize(2205);
    for (double& s : ts.samples) s = amp(rng);

    const auto p = periodogram(ts);
    // reassemble the two-sided sum; with odd length there is no Nyquist bin,
    // so every non-DC bin has a distinct conjugate and counts twice
    double total = p.front();
    for (std::size_t m = 1; m < p.size(); ++m) total += 2.0 * p[m];
    if (ts.size() % 2 == 0) total -= p.back();
    double energy = 0.0;
    for (double s : ts.samples) energy += s * s;
    CHECK(total == doctest::Approx(energy).epsilon(1e-6));
}

TEST_CASE("train_fft mirrors train_prf") {
    const auto one = synth_tone({ToneKind::Viol, 440.0, 0.05, 44100.0});
    const std::vector<TimeSeries> same{one, one};
    const auto model = train_fft(same, small_config());
    CHECK(model.sigma == 0.0);
    REQUIRE(model.mean.size() == 2000);

    const auto ws = tone_windows(ToneKind::Viol, 6);
    const auto trained = train_fft(ws, small_config());
    double max_train_dist = 0.0;
    for (const auto& w : ws)
        max_train_dist = std::max(max_train_dist, membership_fft(trained, w, 1.0).distance);
    for (const auto& w : ws)
        CHECK(membership_fft(trained, w, 1.0).distance <= max_train_dist);
}

TEST_CASE("clarinet-like model rejects a viol-like sample at k = 1") {
    const auto train = jittered_windows(ToneKind::Clarinet, 8, 4);
    const auto cfg = small_config();

    const auto prf_model = train_prf(train, cfg);
    REQUIRE(prf_model.sigma > 0.0);
    const auto viol = jittered_windows(ToneKind::Viol, 1, 777)[0];
    CHECK_FALSE(membership(prf_model, viol, 1.0).member);

    const auto fft_model = train_fft(train, cfg);
    CHECK_FALSE(membership_fft(fft_model, viol, 1.0).member);
}

TEST_CASE("roc: endpoints and monotonicity") {
    const auto train = jittered_windows(ToneKind::Clarinet, 6, 3);
    const auto model = train_prf(train, small_config());
    REQUIRE(model.sigma > 0.0);
    const auto pos = jittered_windows(ToneKind::Clarinet, 6, 100);
    const auto neg = jittered_windows(ToneKind::Viol, 6, 200);

    const auto curve = roc(model, pos, neg, {0.0, 0.5, 1.0, 2.0, 5.0, 1e6});
    REQUIRE(curve.points.size() == 6);
    CHECK(curve.points.front().tpr == 0.0); // k = 0 accepts nothing
    CHECK(curve.points.front().fpr == 0.0);
    CHECK(curve.points.back().tpr == 1.0); // huge k accepts everything
    CHECK(curve.points.back().fpr == 1.0);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        CHECK(curve.points[i].tpr >= curve.points[i - 1].tpr);
        CHECK(curve.points[i].fpr >= curve.points[i - 1].fpr);
    }

    CHECK_THROWS_AS(roc(model, {}, neg, {1.0}), InvalidArgumentError);
    CHECK_THROWS_AS(roc(model, pos, neg, {}), InvalidArgumentError);
}

TEST_CASE("default_k_grid spans (0, 5]") {
    const auto grid = default_k_grid();
    REQUIRE(grid.size() == 100);
    CHECK(grid.front() == doctest::Approx(0.05));
    CHECK(grid.back() == doctest::Approx(5.0));
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("model files round-trip") {
    const auto ws = tone_windows(ToneKind::Clarinet, 4);
    const auto sample = tone_windows(ToneKind::Clarinet, 1, 440.0, 55)[0];

    SUBCASE("prf model") {
        const auto model = train_prf(ws, small_config());
        const std::string path = temp_path("tt_model_prf.csv");
        save_prf_model(path, model);
        CHECK(peek_model_kind(path) == ModelKind::Prf);

        const auto loaded = load_prf_model(path);
        CHECK(loaded.sigma == model.sigma);
        CHECK(loaded.config.eps_max == model.config.eps_max);
        CHECK(loaded.mean.values == model.mean.values);
        CHECK(membership(loaded, sample, 1.0).distance ==
              membership(model, sample, 1.0).distance);
        CHECK_THROWS_AS(load_fft_model(path), FormatError);
        std::remove(path.c_str());
    }
    SUBCASE("fft model") {
        const auto model = train_fft(ws, small_config());
        const std::string path = temp_path("tt_model_fft.csv");
        save_fft_model(path, model);
        CHECK(peek_model_kind(path) == ModelKind::Fft);

        const auto loaded = load_fft_model(path);
        CHECK(loaded.sigma == model.sigma);
        CHECK(loaded.mean == model.mean);
        CHECK(membership_fft(loaded, sample, 1.0).distance ==
              membership_fft(model, sample, 1.0).distance);
        CHECK_THROWS_AS(load_prf_model(path), FormatError);
        std::remove(path.c_str());
    }
    SUBCASE("corrupted file") {
        const std::string path = temp_path("tt_model_bad.csv");
        std::ofstream out(path);
        out << "not,a,model\n";
        out.close();
        CHECK_THROWS_AS(peek_model_kind(path), FormatError);
        CHECK_THROWS_AS(load_prf_model(path), FormatError);
        std::remove(path.c_str());
    }
}
