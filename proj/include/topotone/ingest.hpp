#ifndef TOPOTONE_INGEST_HPP
#define TOPOTONE_INGEST_HPP

#include <string>
#include <vector>

namespace topotone {

/// Uniformly sampled scalar signal.
struct TimeSeries {
    std::vector<double> samples; // dimensionless amplitudes
    double rate = 0.0;           // samples per second, > 0

    std::size_t size() const { return samples.size(); }
    double duration() const { return rate > 0 ? samples.size() / rate : 0.0; }
};

/// How to cut a series into analysis windows.
struct WindowSpec {
    double duration = 0.05; // seconds per window
    int count = 1;          // number of windows
    bool disjoint = true;   // consecutive non-overlapping windows
};

/// Read a RIFF/WAVE file (PCM 8/16/24-bit integer or IEEE float 32-bit,
/// little-endian). Multi-channel input is averaged to mono; amplitudes are
/// normalized to [-1, 1]; the rate comes from the header.
/// Throws FormatError on malformed files, UnsupportedError on encodings
/// outside the list above, IoError if the file cannot be opened.
TimeSeries read_wav(const std::string& path);

/// Write a mono PCM16 WAV file. Samples are clamped to [-1, 1] and scaled
/// by 32767.
void write_wav_pcm16(const std::string& path, const TimeSeries& ts);

/// Read a newline-delimited list of reals. A non-numeric first line is
/// treated as a header and skipped; a non-numeric body line is a ParseError
/// naming the line. An empty file (no numeric rows) is an
/// InsufficientDataError. The sample rate must be supplied by the caller.
TimeSeries read_csv(const std::string& path, double rate);

/// Cut `spec.count` windows of floor(duration * rate) samples each.
/// Disjoint windows are consecutive and non-overlapping from the start of
/// the series. Throws InsufficientDataError (stating required vs available
/// samples) when the series is too short.
std::vector<TimeSeries> windows(const TimeSeries& ts, const WindowSpec& spec);

/// Drop the first `seconds` of the series (used to trim attack transients).
TimeSeries skip_seconds(const TimeSeries& ts, double seconds);

/// Scale amplitudes into [-1, 1] by the peak magnitude. An all-zero series
/// is returned unchanged.
TimeSeries normalize_amplitude(const TimeSeries& ts);

} // namespace topotone

#endif
