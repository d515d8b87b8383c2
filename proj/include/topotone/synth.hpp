#ifndef TOPOTONE_SYNTH_HPP
#define TOPOTONE_SYNTH_HPP

#include "topotone/ingest.hpp"

#include <cstdint>
#include <string>

namespace topotone {

/// Deterministic synthetic tones standing in for instrument recordings.
enum class ToneKind {
    Sine,     // single partial
    Clarinet, // odd harmonics only, fast decay: one dominant loop
    Viol      // dense partials of comparable amplitude
};

struct ToneSpec {
    ToneKind kind = ToneKind::Sine;
    double freq = 440.0;     // fundamental, Hz
    double duration = 1.0;   // seconds
    double rate = 44100.0;   // samples/second
    int partials = 0;        // 0 = kind default (sine 1, clarinet 5, viol 6)
    double noise = 0.0;      // additive white noise amplitude, relative to peak
    std::uint64_t seed = 0;  // noise generator seed
};

ToneKind tone_kind_from_string(const std::string& name);

/// Render the tone. Harmonic stack is normalized to peak 0.9 before noise is
/// added; the result is clamped to [-1, 1]. Same spec, same samples.
TimeSeries synth_tone(const ToneSpec& spec);

} // namespace topotone

#endif
