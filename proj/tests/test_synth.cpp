#include "topotone/classify.hpp"
#include "topotone/error.hpp"
#include "topotone/synth.hpp"

#include <doctest.h>

#include <cmath>

using namespace topotone;

namespace {

std::size_t argmax(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

} // namespace

TEST_CASE("synth_tone: sine peaks at its own frequency") {
    const auto ts = synth_tone({ToneKind::Sine, 440.0, 1.0, 44100.0});
    REQUIRE(ts.size() == 44100);
    const auto p = periodogram(ts); // bin spacing = 1 Hz at this length
    const double peak_freq = static_cast<double>(argmax(p)) * ts.rate / ts.size();
    CHECK(std::abs(peak_freq - 440.0) <= ts.rate / ts.size()); // within one bin
}

TEST_CASE("synth_tone: clarinet kind has no even-harmonic energy") {
    const auto ts = synth_tone({ToneKind::Clarinet, 440.0, 1.0, 44100.0});
    const auto p = periodogram(ts);
    const double fundamental = std::sqrt(p[440]);
    for (int h = 2; h <= 8; h += 2) CHECK(std::sqrt(p[440 * h]) < 0.01 * fundamental);
    // odd harmonics are present
    CHECK(p[3 * 440] > 0.0001 * p[440]);
}

TEST_CASE("synth_tone: viol kind has several comparable partials") {
    const auto ts = synth_tone({ToneKind::Viol, 440.0, 1.0, 44100.0});
    const auto p = periodogram(ts);
    const double fundamental = std::sqrt(p[440]);
    for (int h = 2; h <= 3; ++h)
        CHECK(std::sqrt(p[440 * h]) > 0.5 * fundamental); // comparable, not decayed away
}

TEST_CASE("synth_tone: argument validation") {
    CHECK_THROWS_AS(synth_tone({ToneKind::Sine, 440.0, 0.0, 44100.0}), InvalidArgumentError);
    CHECK_THROWS_AS(synth_tone({ToneKind::Sine, 0.0, 1.0, 44100.0}), InvalidArgumentError);
    CHECK_THROWS_AS(tone_kind_from_string("piano"), InvalidArgumentError);
    CHECK(tone_kind_from_string("clarinet-like") == ToneKind::Clarinet);
    CHECK(tone_kind_from_string("viol") == ToneKind::Viol);
}

TEST_CASE("synth_tone: deterministic for a fixed spec, seeded noise") {
    ToneSpec spec{ToneKind::Clarinet, 440.0, 0.1, 44100.0, 0, 0.02, 7};
    const auto a = synth_tone(spec);
    const auto b = synth_tone(spec);
    CHECK(a.samples == b.samples);

    spec.seed = 8;
    const auto c = synth_tone(spec);
    CHECK(a.samples != c.samples);

    // noise stays within its amplitude bound
    ToneSpec clean = spec;
    clean.noise = 0.0;
    const auto base = synth_tone(clean);
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(std::abs(a.samples.empty() ? 0.0 : c.samples[i] - base.samples[i]) <= 0.02 + 1e-12);
}
