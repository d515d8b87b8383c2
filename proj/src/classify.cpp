#include "topotone/classify.hpp"
#include "topotone/embed.hpp"
#include "topotone/error.hpp"
#include "topotone/filtration.hpp"
#include "topotone/format.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>

namespace topotone {

namespace {

std::size_t expected_window_len(const PipelineConfig& cfg) {
    return static_cast<std::size_t>(std::floor(cfg.window_sec * cfg.rate + 1e-9));
}

void check_windows(const std::vector<TimeSeries>& windows) {
    if (windows.size() < 2)
        throw InvalidArgumentError("training needs at least 2 windows, got " +
                                   std::to_string(windows.size()));
    for (std::size_t i = 1; i < windows.size(); ++i) {
        if (windows[i].size() != windows[0].size())
            throw TrainingError("training window " + std::to_string(i) + ": length " +
                                std::to_string(windows[i].size()) + " does not match window 0 (" +
                                std::to_string(windows[0].size()) + ")");
        if (windows[i].rate != windows[0].rate)
            throw TrainingError("training window " + std::to_string(i) + ": rate mismatch");
    }
}

DistanceMatrix window_distances(const TimeSeries& window, const PipelineConfig& cfg) {
    const TimeSeries norm = normalize_amplitude(window);
    const PointCloud cloud = delay_embed(norm, DelayParams{cfg.tau, cfg.dim});
    const LandmarkSet lm = select_landmarks(cloud, static_cast<std::size_t>(cfg.landmarks));
    return distances(cloud, lm);
}

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

std::mutex fftw_plan_mutex; // FFTW planning is not thread-safe

} // namespace

PRFGrid window_prf(const TimeSeries& window, const PipelineConfig& cfg, double eps_max) {
    const DistanceMatrix d = window_distances(window, cfg);
    const WitnessFiltration f = build_filtration(d, 2, eps_max);
    const PersistenceDiagram diagram = persistence(f, 1);
    return prf(diagram, 1, cfg.grid);
}

PRFModel train_prf(const std::vector<TimeSeries>& windows, PipelineConfig cfg) {
    check_windows(windows);
    cfg.rate = windows[0].rate;
    cfg.window_sec = windows[0].size() / windows[0].rate;

    std::vector<DistanceMatrix> dists;
    dists.reserve(windows.size());
    double eps_max = cfg.eps_max;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        try {
            dists.push_back(window_distances(windows[i], cfg));
            if (cfg.eps_max == 0.0)
                eps_max = std::max(eps_max, epsilon_max_rule(dists.back()));
        } catch (const Error& e) {
            throw TrainingError("training window " + std::to_string(i) + ": " + e.what());
        }
    }
    if (!(eps_max > 0))
        throw TrainingError("degenerate training data: derived eps_max is not positive");
    cfg.eps_max = eps_max;

    std::vector<PRFGrid> grids;
    grids.reserve(windows.size());
    for (std::size_t i = 0; i < windows.size(); ++i) {
        try {
            const WitnessFiltration f = build_filtration(dists[i], 2, eps_max);
            grids.push_back(prf(persistence(f, 1), 1, cfg.grid));
        } catch (const Error& e) {
            throw TrainingError("training window " + std::to_string(i) + ": " + e.what());
        }
    }

    PRFModel model;
    model.mean = mean_prf(grids);
    model.sigma = sigma(grids, model.mean);
    model.config = cfg;
    return model;
}

MembershipResult membership(const PRFModel& model, const TimeSeries& sample, double k) {
    if (k < 0) throw InvalidArgumentError("threshold multiplier k must be nonnegative");
    if (sample.rate != model.config.rate)
        throw InvalidArgumentError("sample rate does not match the model");
    if (sample.size() != expected_window_len(model.config))
        throw InvalidArgumentError("sample length " + std::to_string(sample.size()) +
                                   " does not match the model window of " +
                                   std::to_string(expected_window_len(model.config)) +
                                   " samples");
    const PRFGrid g = window_prf(sample, model.config, model.config.eps_max);
    MembershipResult r;
    r.distance = l2_distance(g, model.mean);
    r.threshold = k * model.sigma;
    r.member = r.distance < r.threshold;
    return r;
}

std::vector<double> periodogram(const TimeSeries& ts, bool hann_taper) {
    if (ts.size() == 0) throw InvalidArgumentError("empty series");
    const std::size_t n = ts.size();
    std::vector<double> in(ts.samples);
    if (hann_taper)
        for (std::size_t t = 0; t < n; ++t)
            in[t] *= 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * t / n);
    std::vector<std::complex<double>> out(n / 2 + 1);

    fftw_plan plan;
    {
        std::lock_guard lock(fftw_plan_mutex);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    }
    if (!plan) throw Error("FFT planning failed");
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_plan_mutex);
        fftw_destroy_plan(plan);
    }

    std::vector<double> p(out.size());
    for (std::size_t m = 0; m < out.size(); ++m) p[m] = std::norm(out[m]) / n;
    return p;
}

std::vector<double> fft_frequency_grid() {
    std::vector<double> grid(kFftBins);
    const double ratio = kFftFreqHi / kFftFreqLo;
    for (int i = 0; i < kFftBins; ++i)
        grid[i] = kFftFreqLo * std::pow(ratio, i / static_cast<double>(kFftBins - 1));
    return grid;
}

std::vector<double> fft_features(const TimeSeries& ts, bool hann_taper) {
    if (ts.rate <= 2 * kFftFreqHi)
        throw UnsupportedError("sample rate must exceed " +
                               std::to_string(static_cast<int>(2 * kFftFreqHi)) +
                               " Hz to cover the feature grid; got " +
                               std::to_string(ts.rate));
    const std::vector<double> p = periodogram(ts, hann_taper);
    const double df = ts.rate / ts.size();

    std::vector<double> features(kFftBins);
    const std::vector<double> grid = fft_frequency_grid();
    for (int i = 0; i < kFftBins; ++i) {
        const double x = grid[i] / df;
        std::size_t m = static_cast<std::size_t>(x);
        if (m + 1 >= p.size()) m = p.size() - 2;
        const double frac = x - m;
        features[i] = p[m] + frac * (p[m + 1] - p[m]);
    }
    return features;
}

FFTModel train_fft(const std::vector<TimeSeries>& windows, PipelineConfig cfg) {
    check_windows(windows);
    cfg.rate = windows[0].rate;
    cfg.window_sec = windows[0].size() / windows[0].rate;

    std::vector<std::vector<double>> feats;
    feats.reserve(windows.size());
    for (std::size_t i = 0; i < windows.size(); ++i) {
        try {
            feats.push_back(fft_features(normalize_amplitude(windows[i]), cfg.fft_taper));
        } catch (const Error& e) {
            throw TrainingError("training window " + std::to_string(i) + ": " + e.what());
        }
    }

    FFTModel model;
    model.config = cfg;
    model.mean.assign(kFftBins, 0.0);
    for (const auto& f : feats)
        for (int c = 0; c < kFftBins; ++c) model.mean[c] += f[c];
    for (double& v : model.mean) v /= static_cast<double>(feats.size());

    double sum = 0.0, sum_sq = 0.0;
    for (const auto& f : feats) {
        const double d = euclid(f, model.mean);
        sum += d;
        sum_sq += d * d;
    }
    const double n = static_cast<double>(feats.size());
    model.sigma = std::sqrt(std::max(0.0, sum_sq / n - (sum / n) * (sum / n)));
    return model;
}

MembershipResult membership_fft(const FFTModel& model, const TimeSeries& sample, double k) {
    if (k < 0) throw InvalidArgumentError("threshold multiplier k must be nonnegative");
    if (sample.rate != model.config.rate)
        throw InvalidArgumentError("sample rate does not match the model");
    if (sample.size() != expected_window_len(model.config))
        throw InvalidArgumentError("sample length " + std::to_string(sample.size()) +
                                   " does not match the model window of " +
                                   std::to_string(expected_window_len(model.config)) +
                                   " samples");
    const std::vector<double> f =
        fft_features(normalize_amplitude(sample), model.config.fft_taper);
    MembershipResult r;
    r.distance = euclid(f, model.mean);
    r.threshold = k * model.sigma;
    r.member = r.distance < r.threshold;
    return r;
}

namespace {

ROCCurve roc_from_distances(const std::vector<double>& pos, const std::vector<double>& neg,
                            double sigma_value, const std::vector<double>& k_grid) {
    ROCCurve curve;
    curve.points.reserve(k_grid.size());
    for (double k : k_grid) {
        const double threshold = k * sigma_value;
        ROCPoint pt;
        pt.k = k;
        pt.tpr = static_cast<double>(std::count_if(pos.begin(), pos.end(),
                                                   [&](double d) { return d < threshold; })) /
                 pos.size();
        pt.fpr = static_cast<double>(std::count_if(neg.begin(), neg.end(),
                                                   [&](double d) { return d < threshold; })) /
                 neg.size();
        curve.points.push_back(pt);
    }
    return curve;
}

template <typename Model, typename MembershipFn>
ROCCurve roc_impl(const Model& model, const std::vector<TimeSeries>& positives,
                  const std::vector<TimeSeries>& negatives, const std::vector<double>& k_grid,
                  MembershipFn&& fn) {
    if (positives.empty() || negatives.empty())
        throw InvalidArgumentError("roc needs nonempty positive and negative sets");
    if (k_grid.empty()) throw InvalidArgumentError("roc needs a nonempty k grid");
    std::vector<double> dpos, dneg;
    dpos.reserve(positives.size());
    dneg.reserve(negatives.size());
    for (const auto& s : positives) dpos.push_back(fn(model, s, 1.0).distance);
    for (const auto& s : negatives) dneg.push_back(fn(model, s, 1.0).distance);
    return roc_from_distances(dpos, dneg, model.sigma, k_grid);
}

} // namespace

ROCCurve roc(const PRFModel& model, const std::vector<TimeSeries>& positives,
             const std::vector<TimeSeries>& negatives, const std::vector<double>& k_grid) {
    return roc_impl(model, positives, negatives, k_grid,
                    [](const PRFModel& m, const TimeSeries& s, double k) {
                        return membership(m, s, k);
                    });
}

ROCCurve roc(const FFTModel& model, const std::vector<TimeSeries>& positives,
             const std::vector<TimeSeries>& negatives, const std::vector<double>& k_grid) {
    return roc_impl(model, positives, negatives, k_grid,
                    [](const FFTModel& m, const TimeSeries& s, double k) {
                        return membership_fft(m, s, k);
                    });
}

std::vector<double> default_k_grid(int n) {
    if (n < 1) throw InvalidArgumentError("k grid size must be >= 1");
    std::vector<double> grid(n);
    for (int i = 1; i <= n; ++i) grid[i - 1] = 5.0 * i / n;
    return grid;
}

// ---------------------------------------------------------------------------
// Model files: sectioned CSV with a versioned header line.
// ---------------------------------------------------------------------------

namespace {

constexpr const char* kModelMagic = "topotone-model";
constexpr int kModelVersion = 1;

void write_config(std::ofstream& out, const PipelineConfig& cfg) {
    out << "[config]\n";
    out << "tau," << cfg.tau << '\n';
    out << "dim," << cfg.dim << '\n';
    out << "landmarks," << cfg.landmarks << '\n';
    out << "grid," << cfg.grid << '\n';
    out << "eps_max," << format_double(cfg.eps_max) << '\n';
    out << "window_sec," << format_double(cfg.window_sec) << '\n';
    out << "rate," << format_double(cfg.rate) << '\n';
    out << "taper," << (cfg.fft_taper ? 1 : 0) << '\n';
}

class ModelReader {
public:
    explicit ModelReader(const std::string& path) : path_(path), in_(path) {
        if (!in_) throw IoError("cannot open file: " + path);
    }

    std::string next_line() {
        std::string line;
        if (!std::getline(in_, line)) throw FormatError("truncated model file: " + path_);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    }

    void expect(const std::string& want) {
        const std::string got = next_line();
        if (got != want)
            throw FormatError("model file " + path_ + ": expected '" + want + "', got '" + got + "'");
    }

    double number() {
        const std::string line = next_line();
        try {
            std::size_t used = 0;
            const double v = std::stod(line, &used);
            if (used != line.size()) throw std::invalid_argument(line);
            return v;
        } catch (const std::exception&) {
            throw FormatError("model file " + path_ + ": bad number '" + line + "'");
        }
    }

    double keyed_number(const std::string& key) {
        const std::string line = next_line();
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.substr(0, comma) != key)
            throw FormatError("model file " + path_ + ": expected key '" + key + "'");
        try {
            return std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw FormatError("model file " + path_ + ": bad value for '" + key + "'");
        }
    }

    PipelineConfig config() {
        expect("[config]");
        PipelineConfig cfg;
        cfg.tau = static_cast<int>(keyed_number("tau"));
        cfg.dim = static_cast<int>(keyed_number("dim"));
        cfg.landmarks = static_cast<int>(keyed_number("landmarks"));
        cfg.grid = static_cast<int>(keyed_number("grid"));
        cfg.eps_max = keyed_number("eps_max");
        cfg.window_sec = keyed_number("window_sec");
        cfg.rate = keyed_number("rate");
        cfg.fft_taper = keyed_number("taper") != 0;
        return cfg;
    }

    std::string kind_of_header() {
        const std::string head = next_line();
        std::istringstream ss(head);
        std::string magic, version, kind;
        if (!std::getline(ss, magic, ',') || !std::getline(ss, version, ',') ||
            !std::getline(ss, kind, ',') || magic != kModelMagic)
            throw FormatError("not a topotone model file: " + path_);
        if (version != std::to_string(kModelVersion))
            throw FormatError("unsupported model version " + version + ": " + path_);
        return kind;
    }

    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ifstream in_;
};

} // namespace

ModelKind peek_model_kind(const std::string& path) {
    ModelReader reader(path);
    const std::string kind = reader.kind_of_header();
    if (kind == "prf") return ModelKind::Prf;
    if (kind == "fft") return ModelKind::Fft;
    throw FormatError("unknown model kind '" + kind + "': " + path);
}

void save_prf_model(const std::string& path, const PRFModel& model) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << kModelMagic << ',' << kModelVersion << ",prf\n";
    write_config(out, model.config);
    out << "[sigma]\n" << format_double(model.sigma) << '\n';
    out << "[mean]\n";
    const int g = model.mean.resolution;
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            if (j) out << ',';
            out << format_double(model.mean.at(i, j));
        }
        out << '\n';
    }
    if (!out.good()) throw IoError("error writing file: " + path);
}

PRFModel load_prf_model(const std::string& path) {
    ModelReader reader(path);
    if (reader.kind_of_header() != "prf")
        throw FormatError("not a prf model: " + path);
    PRFModel model;
    model.config = reader.config();
    reader.expect("[sigma]");
    model.sigma = reader.number();
    reader.expect("[mean]");
    const int g = model.config.grid;
    model.mean.resolution = g;
    model.mean.eps_max = model.config.eps_max;
    model.mean.values.assign(static_cast<std::size_t>(g) * g, 0.0);
    for (int i = 0; i < g; ++i) {
        const std::string line = reader.next_line();
        std::istringstream ss(line);
        std::string cell;
        for (int j = 0; j < g; ++j) {
            if (!std::getline(ss, cell, ','))
                throw FormatError("model file " + path + ": short mean row");
            model.mean.at(i, j) = std::stod(cell);
        }
    }
    return model;
}

void save_fft_model(const std::string& path, const FFTModel& model) {
    if (model.mean.size() != static_cast<std::size_t>(kFftBins))
        throw InvalidArgumentError("fft model mean must have " + std::to_string(kFftBins) +
                                   " entries");
    std::ofstream out(path);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << kModelMagic << ',' << kModelVersion << ",fft\n";
    write_config(out, model.config);
    out << "[sigma]\n" << format_double(model.sigma) << '\n';
    out << "[mean]\n";
    for (double v : model.mean) out << format_double(v) << '\n';
    if (!out.good()) throw IoError("error writing file: " + path);
}

FFTModel load_fft_model(const std::string& path) {
    ModelReader reader(path);
    if (reader.kind_of_header() != "fft")
        throw FormatError("not an fft model: " + path);
    FFTModel model;
    model.config = reader.config();
    reader.expect("[sigma]");
    model.sigma = reader.number();
    reader.expect("[mean]");
    model.mean.resize(kFftBins);
    for (int i = 0; i < kFftBins; ++i) model.mean[i] = reader.number();
    return model;
}

void write_roc_csv(const std::string& path, const ROCCurve& curve) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << "k,tpr,fpr\n";
    for (const auto& p : curve.points)
        out << format_double(p.k) << ',' << format_double(p.tpr) << ',' << format_double(p.fpr)
            << '\n';
    if (!out.good()) throw IoError("error writing file: " + path);
}

} // namespace topotone
