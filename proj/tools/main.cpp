#include "topotone/classify.hpp"
#include "topotone/embed.hpp"
#include "topotone/error.hpp"
#include "topotone/filtration.hpp"
#include "topotone/format.hpp"
#include "topotone/homology.hpp"
#include "topotone/ingest.hpp"
#include "topotone/prf.hpp"
#include "topotone/synth.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace topotone;

namespace {

// Exit codes: 0 success, 1 usage, 2 data, 3 internal.
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct InputOptions {
    std::string input;
    double rate = 0.0; // required for CSV input
    double skip_seconds = 0.0;
};

struct PipelineOptions {
    int tau = 0;
    double freq = 0.0;
    int dim = 2;
    int landmarks = 100;
    int grid = 64;
    double eps_max = 0.0; // 0 = derive by the first-20-simplex rule
    double window_sec = 0.05;
    bool maxmin = false;
    bool taper = false;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("--input", in.input, "input WAV or CSV file")->required();
    cmd->add_option("--rate", in.rate, "sample rate for CSV input (Hz)");
    cmd->add_option("--skip-seconds", in.skip_seconds,
                    "seconds to drop from the start (attack transients)");
}

void add_pipeline_options(CLI::App* cmd, PipelineOptions& p, bool with_landmarks = true) {
    auto* tau = cmd->add_option("--tau", p.tau, "delay in samples");
    auto* freq = cmd->add_option("--freq", p.freq, "tone frequency (Hz); tau = rate/(freq*pi)");
    tau->excludes(freq);
    freq->excludes(tau);
    cmd->add_option("--dim", p.dim, "reconstruction dimension")->default_val(2);
    if (with_landmarks)
        cmd->add_option("--landmarks", p.landmarks, "number of landmarks")->default_val(100);
    cmd->add_option("--grid", p.grid, "PRF grid resolution")->default_val(64);
    cmd->add_option("--eps-max", p.eps_max, "scale cap override (default: derived)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--window-sec", p.window_sec, "analysis window length in seconds")
        ->default_val(0.05);
    cmd->add_flag("--maxmin", p.maxmin, "greedy max-min landmark selection instead of even "
                                        "time spacing");
    cmd->add_flag("--taper", p.taper, "Hann-taper the spectrum baseline (fft method)");
}

TimeSeries load_input(const InputOptions& in) {
    const bool is_csv = fs::path(in.input).extension() == ".csv";
    TimeSeries ts;
    if (is_csv) {
        if (in.rate <= 0)
            throw InvalidArgumentError("--rate is required for CSV input");
        ts = read_csv(in.input, in.rate);
    } else {
        ts = read_wav(in.input);
    }
    if (in.skip_seconds > 0) ts = skip_seconds(ts, in.skip_seconds);
    return ts;
}

int resolve_tau(const PipelineOptions& p, double rate) {
    if (p.tau > 0 && p.freq > 0)
        throw InvalidArgumentError("give exactly one of --tau and --freq");
    if (p.tau > 0) return p.tau;
    if (p.freq > 0) return suggest_tau(rate, p.freq);
    throw InvalidArgumentError("one of --tau or --freq is required");
}

// First analysis window, normalized, per the configured window length.
TimeSeries analysis_window(const TimeSeries& ts, double window_sec) {
    if (window_sec <= 0) return normalize_amplitude(ts);
    return normalize_amplitude(windows(ts, WindowSpec{window_sec, 1, true})[0]);
}

LandmarkSet pick_landmarks(const PointCloud& cloud, std::size_t l, bool maxmin) {
    return maxmin ? select_landmarks_maxmin(cloud, l) : select_landmarks(cloud, l);
}

void ensure_out_dir(const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir);
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

// ---------------------------------------------------------------------------
// persistence diagram SVG: birth/death scatter, essentials as triangles
// ---------------------------------------------------------------------------

void write_diagram_svg(const std::string& path, const PersistenceDiagram& d, bool keep_zero) {
    const double size = 480, pad = 48;
    const double span = size - 2 * pad;
    const double cap = d.eps_max > 0 ? d.eps_max : 1.0;
    auto sx = [&](double birth) { return pad + span * birth / cap; };
    auto sy = [&](double death) { return size - pad - span * death / cap; };

    std::ofstream out(path);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    out << "  <rect width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
    // axes and the birth = death diagonal
    out << "  <line x1=\"" << pad << "\" y1=\"" << size - pad << "\" x2=\"" << size - pad
        << "\" y2=\"" << size - pad << "\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << pad << "\" y1=\"" << size - pad << "\" x2=\"" << pad << "\" y2=\""
        << pad << "\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << pad << "\" y1=\"" << size - pad << "\" x2=\"" << size - pad
        << "\" y2=\"" << pad << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
    out << "  <text x=\"" << size / 2 << "\" y=\"" << size - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">birth</text>\n";
    out << "  <text x=\"14\" y=\"" << size / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 14 " << size / 2
        << ")\">death</text>\n";
    char cap_label[32];
    std::snprintf(cap_label, sizeof(cap_label), "%.4g", cap);
    out << "  <text x=\"" << pad << "\" y=\"" << size - pad + 16
        << "\" text-anchor=\"middle\" font-size=\"11\">0</text>\n";
    out << "  <text x=\"" << size - pad << "\" y=\"" << size - pad + 16
        << "\" text-anchor=\"middle\" font-size=\"11\">" << cap_label << "</text>\n";

    for (const auto& p : d.points) {
        if (p.zero_persistence() && !keep_zero) continue;
        const double x = sx(p.birth), y = sy(p.essential ? d.eps_max : p.death);
        if (p.essential) {
            out << "  <polygon points=\"" << x << "," << y - 5 << " " << x - 5 << "," << y + 4
                << " " << x + 5 << "," << y + 4 << "\" fill=\"#d62728\"/>\n";
        } else {
            out << "  <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3.2\" fill=\"#1f77b4\""
                << " fill-opacity=\"0.75\"/>\n";
        }
    }
    out << "</svg>\n";
    if (!out.good()) throw IoError("error writing file: " + path);
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_synth(const std::string& kind, double freq, double duration, double rate, int partials,
              double noise, std::uint64_t seed, const std::string& out) {
    ToneSpec spec;
    spec.kind = tone_kind_from_string(kind);
    spec.freq = freq;
    spec.duration = duration;
    spec.rate = rate;
    spec.partials = partials;
    spec.noise = noise;
    spec.seed = seed;
    write_wav_pcm16(out, synth_tone(spec));
    std::cout << "wrote " << out << " (" << format_double(duration) << " s at "
              << format_double(rate) << " Hz)\n";
    return 0;
}

int cmd_embed(const InputOptions& in, const PipelineOptions& p, const std::string& out_dir) {
    const TimeSeries ts = load_input(in);
    const int tau = resolve_tau(p, ts.rate);
    const TimeSeries win = analysis_window(ts, p.window_sec);
    const PointCloud cloud = delay_embed(win, DelayParams{tau, p.dim});

    ensure_out_dir(out_dir);
    write_cloud_csv(join(out_dir, "cloud.csv"), cloud);
    std::cout << "cloud: " << cloud.size() << " points, dim " << cloud.dim << ", tau " << tau
              << "\n";

    if (p.landmarks > 0 && static_cast<std::size_t>(p.landmarks) <= cloud.size()) {
        const LandmarkSet lm = pick_landmarks(cloud, p.landmarks, p.maxmin);
        const DistanceMatrix d = distances(cloud, lm);
        std::ofstream lmout(join(out_dir, "landmarks.csv"));
        lmout << "index\n";
        for (std::size_t i : lm.indices) lmout << i << '\n';
        write_distances_csv(join(out_dir, "distances.csv"), d);
        std::cout << "landmarks: " << lm.size()
                  << ", eps rule: " << format_double(epsilon_max_rule(d)) << "\n";
    }
    return 0;
}

int cmd_persist(const InputOptions& in, const PipelineOptions& p, const std::string& out_dir,
                bool keep_zero) {
    const TimeSeries ts = load_input(in);
    const int tau = resolve_tau(p, ts.rate);
    const TimeSeries win = analysis_window(ts, p.window_sec);
    const PointCloud cloud = delay_embed(win, DelayParams{tau, p.dim});
    const LandmarkSet lm = pick_landmarks(cloud, p.landmarks, p.maxmin);
    const DistanceMatrix d = distances(cloud, lm);

    double eps_max = p.eps_max;
    if (eps_max == 0.0) eps_max = epsilon_max_rule(d);
    if (!(eps_max > 0))
        throw InvalidArgumentError("degenerate scale range: eps_max must be positive");

    const WitnessFiltration f = build_filtration(d, 2, eps_max);
    const PersistenceDiagram diagram = persistence(f, 1);

    ensure_out_dir(out_dir);
    write_diagram_csv(join(out_dir, "diagram.csv"), diagram, keep_zero);
    write_diagram_svg(join(out_dir, "diagram.svg"), diagram, keep_zero);
    write_filtration_csv(join(out_dir, "filtration.csv"), f);

    std::size_t h1 = 0, essential1 = 0;
    for (const auto& pt : diagram.points) {
        if (pt.k != 1 || pt.zero_persistence()) continue;
        ++h1;
        if (pt.essential) ++essential1;
    }
    std::cout << "eps_max " << format_double(eps_max) << ", " << f.entries.size()
              << " simplices, H1 features " << h1 << " (" << essential1 << " essential)\n";
    return 0;
}

int cmd_bench(const InputOptions& in, const PipelineOptions& p,
              const std::vector<int>& landmark_list, double fixed_eps, bool skip_cech,
              const std::string& out_dir) {
    const TimeSeries ts = load_input(in);
    const int tau = resolve_tau(p, ts.rate);
    const TimeSeries win = analysis_window(ts, p.window_sec);
    const PointCloud cloud = delay_embed(win, DelayParams{tau, p.dim});

    struct Row {
        std::string name;
        std::size_t landmarks = 0;
        std::size_t triangles = 0;
        std::size_t simplices = 0;
        double seconds = 0.0;
        std::size_t est_bytes = 0;
    };
    // estimated record: three vertex ids plus a birth scale
    constexpr std::size_t kRecordBytes = 3 * sizeof(VertexId) + sizeof(double);

    double eps = fixed_eps;
    std::vector<Row> rows;
    using clock = std::chrono::steady_clock;

    for (int l : landmark_list) {
        const LandmarkSet lm = pick_landmarks(cloud, l, p.maxmin);
        const DistanceMatrix d = distances(cloud, lm);
        if (eps == 0.0) eps = 0.6 * epsilon_max_rule(d);
        if (!(eps > 0)) throw InvalidArgumentError("degenerate scale: derived eps is zero");

        const auto t0 = clock::now();
        const WitnessFiltration f = build_filtration(d, 2, eps);
        const auto t1 = clock::now();

        Row row;
        row.name = "witness";
        row.landmarks = static_cast<std::size_t>(l);
        row.simplices = f.entries.size();
        for (const auto& e : f.entries)
            if (e.simplex.size() == 3) ++row.triangles;
        row.seconds = std::chrono::duration<double>(t1 - t0).count();
        row.est_bytes = row.simplices * kRecordBytes;
        rows.push_back(row);
    }

    if (!skip_cech) {
        if (eps == 0.0)
            throw InvalidArgumentError("give --eps or at least one --landmarks value");
        const auto t0 = clock::now();
        const CechComplex cx = cech_complex(cloud, eps, 2);
        const auto t1 = clock::now();
        Row row;
        row.name = "cech";
        row.landmarks = cloud.size();
        row.triangles = cx.triangles.size();
        row.simplices = cx.simplex_count();
        row.seconds = std::chrono::duration<double>(t1 - t0).count();
        row.est_bytes = row.simplices * kRecordBytes;
        rows.insert(rows.begin(), row);
    }

    ensure_out_dir(out_dir);
    std::ofstream csv(join(out_dir, "bench.csv"));
    csv << "name,landmarks,triangles,simplices,build_seconds,est_memory_bytes\n";
    for (const auto& r : rows)
        csv << r.name << ',' << r.landmarks << ',' << r.triangles << ',' << r.simplices << ','
            << format_double(r.seconds) << ',' << r.est_bytes << '\n';

    std::cout << "eps " << format_double(eps) << " on " << cloud.size() << " points\n";
    std::printf("%-10s %10s %12s %12s %10s %14s\n", "complex", "landmarks", "triangles",
                "simplices", "seconds", "est bytes");
    for (const auto& r : rows)
        std::printf("%-10s %10zu %12zu %12zu %10.3f %14zu\n", r.name.c_str(), r.landmarks,
                    r.triangles, r.simplices, r.seconds, r.est_bytes);
    return 0;
}

PipelineConfig to_config(const PipelineOptions& p, double rate) {
    PipelineConfig cfg;
    cfg.tau = resolve_tau(p, rate);
    cfg.dim = p.dim;
    cfg.landmarks = p.landmarks;
    cfg.grid = p.grid;
    cfg.eps_max = p.eps_max;
    cfg.window_sec = p.window_sec;
    cfg.rate = rate;
    cfg.fft_taper = p.taper;
    return cfg;
}

int cmd_train(const InputOptions& in, const PipelineOptions& p, const std::string& method,
              int window_count, const std::string& out_dir) {
    const TimeSeries ts = load_input(in);
    const auto ws = windows(ts, WindowSpec{p.window_sec, window_count, true});
    const PipelineConfig cfg = to_config(p, ts.rate);

    ensure_out_dir(out_dir);
    const std::string out = join(out_dir, "model.csv");
    if (method == "prf") {
        const PRFModel model = train_prf(ws, cfg);
        save_prf_model(out, model);
        write_prf_csv(join(out_dir, "mean_prf.csv"), model.mean);
        std::cout << "trained prf model on " << ws.size() << " windows: sigma "
                  << format_double(model.sigma) << ", eps_max "
                  << format_double(model.config.eps_max) << " -> " << out << "\n";
    } else if (method == "fft") {
        const FFTModel model = train_fft(ws, cfg);
        save_fft_model(out, model);
        std::cout << "trained fft model on " << ws.size() << " windows: sigma "
                  << format_double(model.sigma) << " -> " << out << "\n";
    } else {
        throw InvalidArgumentError("unknown method: " + method + " (expected prf or fft)");
    }
    return 0;
}

std::vector<TimeSeries> model_windows(const std::string& path, double skip, double rate_opt,
                                      double window_sec, double expected_rate, int count) {
    InputOptions in;
    in.input = path;
    in.rate = rate_opt;
    in.skip_seconds = skip;
    const TimeSeries ts = load_input(in);
    if (ts.rate != expected_rate)
        throw InvalidArgumentError("input rate " + format_double(ts.rate) +
                                   " does not match the model rate " +
                                   format_double(expected_rate));
    return windows(ts, WindowSpec{window_sec, count, true});
}

int cmd_classify(const std::string& model_path, const InputOptions& in, double k) {
    const ModelKind kind = peek_model_kind(model_path);
    MembershipResult r;
    if (kind == ModelKind::Prf) {
        const PRFModel model = load_prf_model(model_path);
        r = membership(model,
                       model_windows(in.input, in.skip_seconds, in.rate,
                                     model.config.window_sec, model.config.rate, 1)[0],
                       k);
    } else {
        const FFTModel model = load_fft_model(model_path);
        r = membership_fft(model,
                           model_windows(in.input, in.skip_seconds, in.rate,
                                         model.config.window_sec, model.config.rate, 1)[0],
                           k);
    }
    std::cout << "member," << (r.member ? 1 : 0) << ",distance," << format_double(r.distance)
              << ",threshold," << format_double(r.threshold) << "\n";
    return 0;
}

int cmd_roc(const std::string& model_path, const std::string& positives,
            const std::string& negatives, double skip, double rate_opt, int window_count,
            int k_grid_size, const std::string& out_dir) {
    const ModelKind kind = peek_model_kind(model_path);
    const auto k_grid = default_k_grid(k_grid_size);

    ROCCurve curve;
    if (kind == ModelKind::Prf) {
        const PRFModel model = load_prf_model(model_path);
        const auto pos = model_windows(positives, skip, rate_opt, model.config.window_sec,
                                       model.config.rate, window_count);
        const auto neg = model_windows(negatives, skip, rate_opt, model.config.window_sec,
                                       model.config.rate, window_count);
        curve = roc(model, pos, neg, k_grid);
    } else {
        const FFTModel model = load_fft_model(model_path);
        const auto pos = model_windows(positives, skip, rate_opt, model.config.window_sec,
                                       model.config.rate, window_count);
        const auto neg = model_windows(negatives, skip, rate_opt, model.config.window_sec,
                                       model.config.rate, window_count);
        curve = roc(model, pos, neg, k_grid);
    }

    ensure_out_dir(out_dir);
    write_roc_csv(join(out_dir, "roc.csv"), curve);
    double best_margin = -1.0, best_k = 0.0, best_tpr = 0.0, best_fpr = 0.0;
    for (const auto& pt : curve.points)
        if (pt.tpr - pt.fpr > best_margin) {
            best_margin = pt.tpr - pt.fpr;
            best_k = pt.k;
            best_tpr = pt.tpr;
            best_fpr = pt.fpr;
        }
    std::cout << "roc over " << curve.points.size() << " thresholds; best margin at k "
              << format_double(best_k) << " (tpr " << format_double(best_tpr) << ", fpr "
              << format_double(best_fpr) << ") -> " << join(out_dir, "roc.csv") << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"witness-complex persistence analysis of scalar time series"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "write a deterministic synthetic tone as WAV");
    std::string synth_kind = "sine", synth_out = "tone.wav";
    double synth_freq = 440.0, synth_duration = 1.0, synth_rate = 44100.0, synth_noise = 0.0;
    int synth_partials = 0;
    std::uint64_t synth_seed = 0;
    synth->add_option("--kind", synth_kind, "sine, clarinet or viol")->default_val("sine");
    synth->add_option("--freq", synth_freq, "fundamental frequency (Hz)")->default_val(440.0);
    synth->add_option("--duration", synth_duration, "seconds")->default_val(1.0);
    synth->add_option("--rate", synth_rate, "sample rate (Hz)")->default_val(44100.0);
    synth->add_option("--partials", synth_partials, "number of partials (0 = kind default)");
    synth->add_option("--noise", synth_noise, "additive noise amplitude");
    synth->add_option("--seed", synth_seed, "noise seed");
    synth->add_option("--out", synth_out, "output WAV path")->default_val("tone.wav");

    // embed
    auto* embed = app.add_subcommand("embed", "delay-embed a window and export the cloud");
    InputOptions embed_in;
    PipelineOptions embed_p;
    std::string embed_out = "out";
    add_input_options(embed, embed_in);
    add_pipeline_options(embed, embed_p);
    embed->add_option("--out-dir", embed_out, "output directory")->default_val("out");

    // persist
    auto* persist = app.add_subcommand("persist", "compute a persistence diagram for a window");
    InputOptions persist_in;
    PipelineOptions persist_p;
    std::string persist_out = "out";
    bool persist_keep_zero = false;
    add_input_options(persist, persist_in);
    add_pipeline_options(persist, persist_p);
    persist->add_option("--out-dir", persist_out, "output directory")->default_val("out");
    persist->add_flag("--keep-zero", persist_keep_zero, "keep zero-persistence points");

    // bench
    auto* bench = app.add_subcommand("bench", "compare witness and all-points complex costs");
    InputOptions bench_in;
    PipelineOptions bench_p;
    std::string bench_out = "out";
    std::vector<int> bench_landmarks{200, 50};
    double bench_eps = 0.0;
    bool bench_skip_cech = false;
    add_input_options(bench, bench_in);
    add_pipeline_options(bench, bench_p, /*with_landmarks=*/false);
    bench->add_option("--landmarks", bench_landmarks,
                      "landmark counts to benchmark (comma separated)")
        ->delimiter(',');
    bench->add_option("--eps", bench_eps, "fixed scale (default: 0.6 x derived rule)");
    bench->add_flag("--skip-cech", bench_skip_cech, "skip the all-points complex");
    bench->add_option("--out-dir", bench_out, "output directory")->default_val("out");

    // train
    auto* train = app.add_subcommand("train", "train a membership model");
    InputOptions train_in;
    PipelineOptions train_p;
    std::string train_method = "prf", train_out = "out";
    int train_windows = 25;
    add_input_options(train, train_in);
    add_pipeline_options(train, train_p);
    train->add_option("--method", train_method, "prf or fft")->default_val("prf");
    train->add_option("--windows", train_windows, "number of disjoint training windows")
        ->default_val(25);
    train->add_option("--out-dir", train_out, "output directory")->default_val("out");

    // classify
    auto* classify = app.add_subcommand("classify", "membership-test one sample against a model");
    InputOptions classify_in;
    std::string classify_model;
    double classify_k = 1.0;
    classify->add_option("--model", classify_model, "model file")->required();
    add_input_options(classify, classify_in);
    classify->add_option("--k", classify_k, "threshold multiplier")->default_val(1.0);

    // roc
    auto* roc_cmd = app.add_subcommand("roc", "sweep the threshold and write an ROC curve");
    std::string roc_model, roc_pos, roc_neg, roc_out = "out";
    double roc_skip = 0.0, roc_rate = 0.0;
    int roc_windows = 25, roc_k_grid = 100;
    roc_cmd->add_option("--model", roc_model, "model file")->required();
    roc_cmd->add_option("--positives", roc_pos, "file with positive-class audio")->required();
    roc_cmd->add_option("--negatives", roc_neg, "file with negative-class audio")->required();
    roc_cmd->add_option("--windows", roc_windows, "test windows per file")->default_val(25);
    roc_cmd->add_option("--k-grid", roc_k_grid, "number of thresholds in (0, 5]")
        ->default_val(100);
    roc_cmd->add_option("--skip-seconds", roc_skip, "seconds to drop from the start");
    roc_cmd->add_option("--rate", roc_rate, "sample rate for CSV input (Hz)");
    roc_cmd->add_option("--out-dir", roc_out, "output directory")->default_val("out");

    // seed is accepted globally so scripted runs can pin it alongside synth
    std::uint64_t global_seed = 0;
    app.add_option("--seed", global_seed, "seed for seeded subcommands");

    try {
        app.parse(argc, argv);

        if (synth->parsed())
            return cmd_synth(synth_kind, synth_freq, synth_duration, synth_rate, synth_partials,
                             synth_noise, synth_seed ? synth_seed : global_seed, synth_out);
        if (embed->parsed()) return cmd_embed(embed_in, embed_p, embed_out);
        if (persist->parsed())
            return cmd_persist(persist_in, persist_p, persist_out, persist_keep_zero);
        if (bench->parsed())
            return cmd_bench(bench_in, bench_p, bench_landmarks, bench_eps, bench_skip_cech,
                             bench_out);
        if (train->parsed())
            return cmd_train(train_in, train_p, train_method, train_windows, train_out);
        if (classify->parsed()) return cmd_classify(classify_model, classify_in, classify_k);
        if (roc_cmd->parsed())
            return cmd_roc(roc_model, roc_pos, roc_neg, roc_skip, roc_rate, roc_windows,
                           roc_k_grid, roc_out);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    } catch (const InvalidArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IntegrityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}
