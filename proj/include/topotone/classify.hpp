#ifndef TOPOTONE_CLASSIFY_HPP
#define TOPOTONE_CLASSIFY_HPP

#include "topotone/ingest.hpp"
#include "topotone/prf.hpp"

#include <string>
#include <vector>

namespace topotone {

/// Everything needed to reprocess raw audio exactly as at training time.
struct PipelineConfig {
    int tau = 0;             // delay in samples
    int dim = 2;             // reconstruction dimension
    int landmarks = 100;     // number of landmarks per window
    int grid = 64;           // PRF resolution G
    double eps_max = 0.0;    // 0 = derive at training (max of per-window rule)
    double window_sec = 0.05;
    double rate = 0.0;       // fixed from the training windows
    bool fft_taper = false;  // Hann taper for the spectrum baseline; off for
                             // a plain rectangular-window periodogram
};

/// Membership model over persistent rank functions of H1.
struct PRFModel {
    PRFGrid mean;
    double sigma = 0.0;
    PipelineConfig config;
};

constexpr int kFftBins = 2000;
constexpr double kFftFreqLo = 10.0;    // Hz
constexpr double kFftFreqHi = 10000.0; // Hz

/// Membership model over log-spaced power-spectrum features.
struct FFTModel {
    std::vector<double> mean; // kFftBins values
    double sigma = 0.0;
    PipelineConfig config;
};

struct MembershipResult {
    bool member = false;
    double distance = 0.0;
    double threshold = 0.0; // k * sigma
};

struct ROCPoint {
    double k = 0.0;
    double tpr = 0.0;
    double fpr = 0.0;
};

struct ROCCurve {
    std::vector<ROCPoint> points;
};

/// One window through the PRF pipeline: normalize, delay-embed, landmarks,
/// witness filtration capped at eps_max, H1 persistence, rank function.
PRFGrid window_prf(const TimeSeries& window, const PipelineConfig& cfg, double eps_max);

/// Train on >= 2 equal-length windows. When cfg.eps_max is 0 the scale cap
/// is the maximum of the per-window epsilon_max_rule values, so all grids
/// (train and later test) align. Throws TrainingError naming the first
/// failing window.
PRFModel train_prf(const std::vector<TimeSeries>& windows, PipelineConfig cfg);

/// Membership test: true iff l2_distance(prf(sample), model.mean)
/// is strictly below k * model.sigma. Returns the distance for diagnostics.
MembershipResult membership(const PRFModel& model, const TimeSeries& sample, double k);

/// Power-spectrum feature vector: the periodogram evaluated at kFftBins
/// log-spaced frequencies in [kFftFreqLo, kFftFreqHi] by linear
/// interpolation between DFT bins. Requires rate > 2 * kFftFreqHi.
/// The default is the plain rectangular-window periodogram; hann_taper
/// applies a Hann window first.
std::vector<double> fft_features(const TimeSeries& ts, bool hann_taper = false);

/// The kFftBins log-spaced evaluation frequencies.
std::vector<double> fft_frequency_grid();

/// One-sided raw periodogram |X_m|^2 / N for m = 0..N/2 (test/debug surface).
std::vector<double> periodogram(const TimeSeries& ts, bool hann_taper = false);

/// FFT-baseline mirrors of train/membership; Euclidean distance between
/// feature vectors. Windows are amplitude-normalized as in the PRF pipeline.
FFTModel train_fft(const std::vector<TimeSeries>& windows, PipelineConfig cfg);
MembershipResult membership_fft(const FFTModel& model, const TimeSeries& sample, double k);

/// Threshold sweep: per k, the fraction of positives / negatives accepted.
/// Sample distances are computed once and reused across the grid.
ROCCurve roc(const PRFModel& model, const std::vector<TimeSeries>& positives,
             const std::vector<TimeSeries>& negatives, const std::vector<double>& k_grid);
ROCCurve roc(const FFTModel& model, const std::vector<TimeSeries>& positives,
             const std::vector<TimeSeries>& negatives, const std::vector<double>& k_grid);

/// n thresholds uniform in (0, 5]: k_i = 5 * i / n.
std::vector<double> default_k_grid(int n = 100);

/// Versioned flat-file model serialization (sectioned CSV with a header
/// line). Loaders throw FormatError on anything but their own kind.
enum class ModelKind { Prf, Fft };
ModelKind peek_model_kind(const std::string& path);
void save_prf_model(const std::string& path, const PRFModel& model);
PRFModel load_prf_model(const std::string& path);
void save_fft_model(const std::string& path, const FFTModel& model);
FFTModel load_fft_model(const std::string& path);

void write_roc_csv(const std::string& path, const ROCCurve& curve);

} // namespace topotone

#endif
