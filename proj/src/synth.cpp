#include "topotone/synth.hpp"
#include "topotone/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace topotone {

namespace {

// Harmonic stack (multiple, amplitude) for each kind.
std::vector<std::pair<int, double>> harmonics(ToneKind kind, int partials) {
    std::vector<std::pair<int, double>> h;
    switch (kind) {
    case ToneKind::Sine:
        h.emplace_back(1, 1.0);
        break;
    case ToneKind::Clarinet: {
        if (partials <= 0) partials = 5;
        for (int p = 0; p < partials; ++p) {
            const int mult = 2 * p + 1; // odd harmonics only
            h.emplace_back(mult, 1.0 / std::pow(mult, 2.2));
        }
        break;
    }
    case ToneKind::Viol: {
        if (partials <= 0) partials = 6;
        for (int p = 0; p < partials; ++p) {
            const int mult = p + 1;
            h.emplace_back(mult, 1.0 / std::pow(mult, 0.35));
        }
        break;
    }
    }
    return h;
}

// Uniform in [-1, 1) from raw generator bits; avoids the
// implementation-defined std::uniform_real_distribution.
double unit_noise(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

} // namespace

ToneKind tone_kind_from_string(const std::string& name) {
    if (name == "sine") return ToneKind::Sine;
    if (name == "clarinet" || name == "clarinet-like") return ToneKind::Clarinet;
    if (name == "viol" || name == "viol-like") return ToneKind::Viol;
    throw InvalidArgumentError("unknown tone kind: " + name +
                               " (expected sine, clarinet or viol)");
}

TimeSeries synth_tone(const ToneSpec& spec) {
    if (spec.freq <= 0) throw InvalidArgumentError("freq must be positive");
    if (spec.duration <= 0) throw InvalidArgumentError("duration must be positive");
    if (spec.rate <= 0) throw InvalidArgumentError("rate must be positive");

    const auto stack = harmonics(spec.kind, spec.partials);
    const std::size_t n = static_cast<std::size_t>(std::floor(spec.duration * spec.rate + 1e-9));
    if (n == 0) throw InvalidArgumentError("duration shorter than one sample");

    TimeSeries ts;
    ts.rate = spec.rate;
    ts.samples.resize(n);
    const double w0 = 2.0 * std::numbers::pi * spec.freq / spec.rate;
    double peak = 0.0;
    for (const auto& [mult, amp] : stack) peak += amp;

    for (std::size_t t = 0; t < n; ++t) {
        double v = 0.0;
        for (const auto& [mult, amp] : stack) v += amp * std::sin(w0 * mult * t);
        ts.samples[t] = 0.9 * v / peak;
    }
    if (spec.noise > 0.0) {
        std::mt19937_64 rng(spec.seed);
        for (double& s : ts.samples) s = std::clamp(s + spec.noise * unit_noise(rng), -1.0, 1.0);
    }
    return ts;
}

} // namespace topotone
