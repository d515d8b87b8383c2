#include "topotone/ingest.hpp"
#include "topotone/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace topotone {

namespace {

uint32_t read_u32le(const unsigned char* p) {
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_u16le(const unsigned char* p) {
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

struct WavFormat {
    uint16_t codec = 0; // 1 = PCM, 3 = IEEE float
    uint16_t channels = 0;
    uint32_t rate = 0;
    uint16_t bits = 0;
};

double decode_sample(const unsigned char* p, const WavFormat& fmt) {
    switch (fmt.bits) {
    case 8: // unsigned 8-bit
        return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16: {
        int16_t v;
        std::memcpy(&v, p, 2);
        return v / 32768.0;
    }
    case 24: {
        int32_t v = static_cast<int32_t>(p[0]) | (static_cast<int32_t>(p[1]) << 8) |
                    (static_cast<int32_t>(p[2]) << 16);
        if (v & 0x800000) v |= ~0xFFFFFF; // sign extend
        return v / 8388608.0;
    }
    case 32: { // IEEE float
        float v;
        std::memcpy(&v, p, 4);
        return static_cast<double>(v);
    }
    default:
        throw UnsupportedError("unsupported bit depth: " + std::to_string(fmt.bits));
    }
}

} // namespace

TimeSeries read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);

    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
        throw FormatError("not a RIFF/WAVE file: " + path);

    WavFormat fmt;
    bool have_fmt = false;
    const unsigned char* data = nullptr;
    size_t data_size = 0;

    size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const unsigned char* chunk = bytes.data() + pos;
        uint32_t chunk_size = read_u32le(chunk + 4);
        if (pos + 8 + chunk_size > bytes.size())
            throw FormatError("truncated chunk in WAV file: " + path);
        if (std::memcmp(chunk, "fmt ", 4) == 0) {
            if (chunk_size < 16) throw FormatError("fmt chunk too small: " + path);
            fmt.codec = read_u16le(chunk + 8);
            fmt.channels = read_u16le(chunk + 10);
            fmt.rate = read_u32le(chunk + 12);
            fmt.bits = read_u16le(chunk + 22);
            have_fmt = true;
        } else if (std::memcmp(chunk, "data", 4) == 0) {
            data = chunk + 8;
            data_size = chunk_size;
        }
        pos += 8 + chunk_size + (chunk_size & 1); // chunks are word-aligned
    }
    if (!have_fmt || data == nullptr)
        throw FormatError("missing fmt or data chunk: " + path);
    if (fmt.codec != 1 && fmt.codec != 3)
        throw UnsupportedError("unsupported WAV codec " + std::to_string(fmt.codec) +
                               " (only PCM and IEEE float): " + path);
    if (fmt.codec == 1 && fmt.bits != 8 && fmt.bits != 16 && fmt.bits != 24)
        throw UnsupportedError("unsupported PCM bit depth " + std::to_string(fmt.bits) + ": " + path);
    if (fmt.codec == 3 && fmt.bits != 32)
        throw UnsupportedError("unsupported float bit depth " + std::to_string(fmt.bits) + ": " + path);
    if (fmt.channels == 0 || fmt.rate == 0)
        throw FormatError("bad channel count or sample rate: " + path);

    const size_t bytes_per_sample = fmt.bits / 8;
    const size_t frame_size = bytes_per_sample * fmt.channels;
    const size_t frames = frame_size > 0 ? data_size / frame_size : 0;

    TimeSeries ts;
    ts.rate = fmt.rate;
    ts.samples.resize(frames);
    for (size_t f = 0; f < frames; ++f) {
        double acc = 0.0;
        for (unsigned c = 0; c < fmt.channels; ++c)
            acc += decode_sample(data + f * frame_size + c * bytes_per_sample, fmt);
        ts.samples[f] = acc / fmt.channels;
    }
    return ts;
}

void write_wav_pcm16(const std::string& path, const TimeSeries& ts) {
    if (ts.rate <= 0) throw InvalidArgumentError("sample rate must be positive");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open file for writing: " + path);

    auto put_u32 = [&](uint32_t v) {
        unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
        out.write(reinterpret_cast<char*>(b), 4);
    };
    auto put_u16 = [&](uint16_t v) {
        unsigned char b[2] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8)};
        out.write(reinterpret_cast<char*>(b), 2);
    };

    const uint32_t data_size = static_cast<uint32_t>(ts.samples.size() * 2);
    const uint32_t rate = static_cast<uint32_t>(std::lround(ts.rate));
    out.write("RIFF", 4);
    put_u32(36 + data_size);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    put_u32(16);
    put_u16(1); // PCM
    put_u16(1); // mono
    put_u32(rate);
    put_u32(rate * 2); // byte rate
    put_u16(2);        // block align
    put_u16(16);       // bits per sample
    out.write("data", 4);
    put_u32(data_size);
    for (double s : ts.samples) {
        // scale matches the reader's /32768 so a round trip stays within half
        // a quantization step
        const long q = std::lround(std::clamp(s, -1.0, 1.0) * 32768.0);
        const int16_t v = static_cast<int16_t>(std::clamp<long>(q, -32768, 32767));
        put_u16(static_cast<uint16_t>(v));
    }
    if (!out.good()) throw IoError("error writing file: " + path);
}

TimeSeries read_csv(const std::string& path, double rate) {
    if (rate <= 0) throw InvalidArgumentError("sample rate must be positive");
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);

    TimeSeries ts;
    ts.rate = rate;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        // skip blank lines
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        char* end = nullptr;
        double v = std::strtod(line.c_str(), &end);
        bool ok = end != line.c_str() &&
                  std::string(end).find_first_not_of(" \t") == std::string::npos;
        if (!ok) {
            if (line_no == 1 && ts.samples.empty()) continue; // header line
            throw ParseError("non-numeric value at line " + std::to_string(line_no) +
                             " of " + path);
        }
        ts.samples.push_back(v);
    }
    if (ts.samples.empty()) throw InsufficientDataError("no samples in " + path);
    return ts;
}

std::vector<TimeSeries> windows(const TimeSeries& ts, const WindowSpec& spec) {
    if (spec.duration <= 0 || spec.count <= 0)
        throw InvalidArgumentError("window duration and count must be positive");
    if (ts.rate <= 0) throw InvalidArgumentError("series rate must be positive");

    const size_t win_len = static_cast<size_t>(std::floor(spec.duration * ts.rate + 1e-9));
    if (win_len == 0) throw InvalidArgumentError("window shorter than one sample");

    const size_t required = spec.disjoint ? win_len * spec.count : win_len;
    if (required > ts.size())
        throw InsufficientDataError(
            "series too short: need " + std::to_string(required) + " samples, have " +
            std::to_string(ts.size()));

    std::vector<TimeSeries> out;
    out.reserve(spec.count);
    for (int w = 0; w < spec.count; ++w) {
        size_t start;
        if (spec.disjoint || spec.count == 1) {
            start = w * win_len;
        } else {
            // overlapping mode: starts spread evenly over the available span
            start = (static_cast<size_t>(w) * (ts.size() - win_len)) / (spec.count - 1);
        }
        TimeSeries win;
        win.rate = ts.rate;
        win.samples.assign(ts.samples.begin() + start, ts.samples.begin() + start + win_len);
        out.push_back(std::move(win));
    }
    return out;
}

TimeSeries skip_seconds(const TimeSeries& ts, double seconds) {
    if (seconds < 0) throw InvalidArgumentError("skip must be nonnegative");
    const size_t n = std::min(ts.size(), static_cast<size_t>(seconds * ts.rate));
    TimeSeries out;
    out.rate = ts.rate;
    out.samples.assign(ts.samples.begin() + n, ts.samples.end());
    return out;
}

TimeSeries normalize_amplitude(const TimeSeries& ts) {
    double peak = 0.0;
    for (double s : ts.samples) peak = std::max(peak, std::fabs(s));
    TimeSeries out = ts;
    if (peak > 0.0)
        for (double& s : out.samples) s /= peak;
    return out;
}

} // namespace topotone
