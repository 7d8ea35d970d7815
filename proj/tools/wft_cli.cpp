#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wft/config.hpp"
#include "wft/fixtures.hpp"
#include "wft/fourier.hpp"
#include "wft/grid.hpp"
#include "wft/inversion.hpp"
#include "wft/io.hpp"
#include "wft/lab.hpp"
#include "wft/stft.hpp"
#include "wft/window.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace wft;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitAnchor = 4;
constexpr int kExitMedia = 5;

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

struct Overrides {
    std::string out;
    std::string pathway;
    std::optional<std::uint64_t> seed;
    std::optional<bool> normalize;
};

struct WindowConfig {
    std::string kind;
    double sigma = 1.0;
    double x0 = 0.0;
    Window window;
};

WindowConfig window_from_config(const Config& cfg) {
    const std::string kind = cfg.get_string("window.kind", "gaussian");
    const double sigma = cfg.get_double("window.sigma", 1.0);
    const double x0 = cfg.get_double("window.x0", 0.0);
    return WindowConfig{kind, sigma, x0, make_window(kind, sigma, x0)};
}

UniformGrid grid_from_config(const Config& cfg) {
    const double half = cfg.get_double("grid.half_width", 16.0);
    const double center = cfg.get_double("grid.center", 0.0);
    const int n = cfg.get_int("grid.points", 2049);
    if (!(half > 0.0) || !std::isfinite(half) || !std::isfinite(center))
        throw ConfigError("grid.half_width must be positive and finite");
    if (n < 2) throw ConfigError("grid.points must be at least 2");
    return UniformGrid::offset(center, half, n);
}

Engine engine_from_config(const Config& cfg) {
    const std::string name = cfg.get_string("engine", "fast");
    if (name == "fast") return Engine::fast;
    if (name == "reference") return Engine::reference;
    throw ConfigError("engine must be 'fast' or 'reference'");
}

struct SignalSource {
    SampledSignal signal;
    std::string fixture;  // empty when loaded from a file
    std::string input_path;
};

SignalSource signal_from_config(const Config& cfg, const UniformGrid& grid) {
    SignalSource src;
    if (cfg.has("signal.input")) {
        src.input_path = cfg.get_string("signal.input");
        if (!fs::exists(src.input_path))
            throw ConfigError("signal.input file does not exist: " + src.input_path);
        src.signal = signal_from_csv(read_text_file(src.input_path));
    } else {
        src.fixture = cfg.get_string("signal.fixture", "gaussian");
        if (!is_fixture(src.fixture)) throw ConfigError("unknown fixture: " + src.fixture);
        src.signal = make_fixture(src.fixture, grid);
    }
    if (!src.signal.all_finite())
        throw NumericValidationError("input signal contains non-finite samples");
    return src;
}

/// Symmetric `truncation.a` or per-side `truncation.a1`/`truncation.a2`;
/// the word `full` selects the grid band.
TruncationPair truncation_from_config(const Config& cfg, double band) {
    auto parse_limit = [&](const std::string& key, double fallback) {
        if (!cfg.has(key)) return fallback;
        const std::string v = cfg.get_string(key);
        return v == "full" ? band : parse_double_token(v, "config key '" + key + "'");
    };
    TruncationPair tr;
    const double a = parse_limit("truncation.a", 8.0);
    tr.a1 = parse_limit("truncation.a1", a);
    tr.a2 = parse_limit("truncation.a2", a);
    if (!(tr.a1 > 0.0) || !(tr.a2 > 0.0) || !std::isfinite(tr.a1) || !std::isfinite(tr.a2))
        throw ConfigError("truncation limits must be positive and finite");
    return tr;
}

std::string out_dir_from_config(const Config& cfg, const Overrides& ov) {
    const std::string dir = !ov.out.empty() ? ov.out : cfg.get_string("out", ".");
    fs::create_directories(dir);
    return dir;
}

ordered_json window_json(const WindowConfig& wc) {
    return ordered_json{{"kind", wc.kind}, {"sigma", wc.sigma}, {"x0", wc.x0}};
}

ordered_json grid_json(const UniformGrid& g) {
    return ordered_json{
        {"center", g.center}, {"half_width", g.half_width}, {"points", g.n}, {"dx", g.dx()}};
}

/// NaN is not representable in JSON; diagnostics without an estimate map to null.
ordered_json finite_or_null(double v) {
    if (std::isfinite(v)) return ordered_json(v);
    return ordered_json(nullptr);
}

std::string describe_seed(const Config& cfg, const Overrides& ov) {
    if (ov.seed) return std::to_string(*ov.seed);
    if (cfg.has("seed")) return std::to_string(cfg.get_int("seed"));
    return std::to_string(static_cast<unsigned long long>(kDefaultNoiseSeed));
}

double rel_l2(const SampledSignal& got, const SampledSignal& want) {
    const LpExponent p2 = LpExponent::finite(2.0);
    const double denom = lp_norm(want, p2);
    return denom > 0.0 ? lp_norm(got - want, p2) / denom : lp_norm(got, p2);
}

int cmd_stft(const Config& cfg, const Overrides& ov) {
    const std::string out = out_dir_from_config(cfg, ov);
    const Engine engine = engine_from_config(cfg);
    const UniformGrid grid = grid_from_config(cfg);
    const WindowConfig wc = window_from_config(cfg);
    const SignalSource src = signal_from_config(cfg, grid);
    const UniformGrid sgrid = src.signal.grid;

    const UniformGrid time_grid =
        UniformGrid::offset(cfg.get_double("stft.t_center", sgrid.center),
                            cfg.get_double("stft.t_half_width", sgrid.half_width),
                            cfg.get_int("stft.t_points", 65));
    const double band = kPi / sgrid.dx();
    const UniformGrid freq_grid =
        UniformGrid::offset(cfg.get_double("stft.omega_center", 0.0),
                            cfg.get_double("stft.omega_half_width", std::min(8.0, band)),
                            cfg.get_int("stft.omega_points", 65));
    if (time_grid.n < 2 || freq_grid.n < 2)
        throw ConfigError("stft lattice needs at least 2 points per axis");

    const StftMatrix mat = forward_stft(src.signal, wc.window, time_grid, freq_grid, engine);
    if (!mat.all_finite())
        throw NumericValidationError("transform produced non-finite samples");

    write_text_file(out + "/stft.csv", stft_to_csv(mat));

    std::string manifest;
    manifest += "[run]\n";
    manifest += "command = stft\n";
    manifest += "window = " + wc.window.describe() + "\n";
    manifest += "signal = " + (src.fixture.empty() ? src.input_path : src.fixture) + "\n";
    manifest += "engine = " + std::string(engine == Engine::fast ? "fast" : "reference") + "\n";
    manifest += "seed = " + describe_seed(cfg, ov) + "\n";
    manifest += "[lattice]\n";
    manifest += "t_points = " + std::to_string(time_grid.n) + "\n";
    manifest += "omega_points = " + std::to_string(freq_grid.n) + "\n";
    write_text_file(out + "/manifest.txt", manifest);

    std::printf("wrote %s/stft.csv (%d x %d samples)\n", out.c_str(),
                static_cast<int>(mat.rows()), static_cast<int>(mat.cols()));
    return kExitOk;
}

int cmd_invert(const Config& cfg, const Overrides& ov) {
    const std::string out = out_dir_from_config(cfg, ov);
    const Engine engine = engine_from_config(cfg);
    const UniformGrid grid = grid_from_config(cfg);
    const WindowConfig wc = window_from_config(cfg);
    const SignalSource src = signal_from_config(cfg, grid);
    const SampledSignal& f = src.signal;
    const double band = kPi / f.grid.dx();

    std::string pathway = !ov.pathway.empty() ? ov.pathway : cfg.get_string("pathway", "multiplier");
    if (pathway != "kernel" && pathway != "multiplier" && pathway != "modulation" &&
        pathway != "double")
        throw ConfigError("pathway must be kernel, multiplier, modulation, or double");
    const bool normalize = ov.normalize ? *ov.normalize : cfg.get_bool("normalize", true);

    TruncationPair tr = truncation_from_config(cfg, band);
    Reconstruction rec;
    if (pathway == "kernel") {
        rec = invert_kernel(f, wc.window, tr, engine);
    } else if (pathway == "multiplier") {
        rec = invert_multiplier(f, wc.window, tr, engine);
    } else if (pathway == "modulation") {
        if (tr.a1 != tr.a2)
            throw ConfigError("the modulation pathway supports symmetric truncations only");
        const SampledSignal fhat = forward_ft(f, engine);
        const UniformGrid nodes = modulation_grid_for_signal(fhat, std::min(tr.a1, band));
        rec = invert_modulation(f, wc.window, tr.a1, nodes, engine);
    } else {  // double
        const UniformGrid tg =
            UniformGrid::offset(cfg.get_double("double.t_center", f.grid.center),
                                cfg.get_double("double.t_half_width", f.grid.half_width),
                                cfg.get_int("double.t_points", 257));
        const UniformGrid og =
            UniformGrid::offset(0.0, cfg.get_double("double.omega_half_width", std::min(16.0, band)),
                                cfg.get_int("double.omega_points", 257));
        const StftMatrix s = forward_stft(f, wc.window, tg, og, engine);
        rec = invert_double_integral(s, wc.window, f.grid, engine);
    }

    const bool single_integral = pathway != "double";
    double tail = rec.diagnostics.tail_estimate;
    if (single_integral && !std::isfinite(tail)) {
        const SampledSignal fhat = forward_ft(f, engine);
        tail = truncation_sup_bound(
            fhat, wc.window, {std::min(tr.a1, band), std::min(tr.a2, band)});
    }

    if (normalize && single_integral) {
        if (!wc.window.invertible_anchor()) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "window vanishes at its anchor (|g(x0)| = %.3g < %.3g); cannot normalize",
                          std::abs(wc.window.g_at_anchor()), kAnchorFloor);
            throw DegenerateAnchorError(buf);
        }
        const cplx c = kTwoPi * std::conj(wc.window.g_at_anchor());
        rec.signal = (1.0 / c) * rec.signal;
        tail /= std::abs(c);
    }
    if (!rec.signal.all_finite())
        throw NumericValidationError("reconstruction produced non-finite samples");

    write_text_file(out + "/reconstruction.csv", signal_to_csv(rec.signal));

    ordered_json meta;
    meta["pathway"] = pathway;
    if (single_integral) {
        meta["a1"] = tr.a1;
        meta["a2"] = tr.a2;
    } else {
        meta["a1"] = nullptr;
        meta["a2"] = nullptr;
    }
    meta["x0"] = wc.x0;
    meta["window"] = window_json(wc);
    meta["normalize"] = normalize;
    meta["method"] = rec.diagnostics.method;
    meta["tail_estimate"] = finite_or_null(tail);
    meta["grid"] = grid_json(f.grid);
    meta["signal"] = src.fixture.empty() ? src.input_path : src.fixture;
    double rel = std::numeric_limits<double>::quiet_NaN();
    if (normalize || !single_integral) {
        rel = rel_l2(rec.signal, f);
    } else if (wc.window.invertible_anchor()) {
        rel = rel_l2(rec.signal, (kTwoPi * std::conj(wc.window.g_at_anchor())) * f);
    }
    meta["relative_l2_vs_input"] = finite_or_null(rel);
    meta["warnings"] = rec.diagnostics.warnings;
    meta["seed"] = describe_seed(cfg, ov);
    write_text_file(out + "/metadata.json", meta.dump(2) + "\n");

    if (std::isfinite(rel))
        std::printf("wrote %s/reconstruction.csv (relative l2 error %.3g)\n", out.c_str(), rel);
    else
        std::printf("wrote %s/reconstruction.csv\n", out.c_str());
    return kExitOk;
}

int cmd_sweep(const Config& cfg, const Overrides& ov) {
    const std::string out = out_dir_from_config(cfg, ov);
    if (cfg.has("signal.input"))
        throw ConfigError("sweeps run on named fixtures; signal.input is not supported here");

    SweepSpec spec;
    spec.fixture = cfg.get_string("signal.fixture", "gaussian");
    if (!is_fixture(spec.fixture)) throw ConfigError("unknown fixture: " + spec.fixture);
    spec.window_kind = cfg.get_string("window.kind", "gaussian");
    spec.window_param = cfg.get_double("window.sigma", 1.0);
    spec.anchor = cfg.get_double("window.x0", 0.0);
    spec.grid = grid_from_config(cfg);
    spec.engine = engine_from_config(cfg);

    const std::string pathway =
        !ov.pathway.empty() ? ov.pathway : cfg.get_string("pathway", "multiplier");
    spec.pathway = parse_pathway(pathway);  // rejects 'double' and typos

    spec.truncations.clear();
    const std::vector<std::string> trunc_words =
        cfg.has("sweep.truncations") ? cfg.get_words("sweep.truncations")
                                     : std::vector<std::string>{"1", "2", "4", "8", "16"};
    if (trunc_words.empty()) throw ConfigError("sweep.truncations is empty");
    for (const auto& w : trunc_words)
        spec.truncations.push_back(parse_double_token(w, "sweep.truncations"));

    const bool extended = cfg.get_bool("sweep.extended", false);
    const std::vector<std::string> exp_words =
        cfg.has("sweep.exponents") ? cfg.get_words("sweep.exponents")
                                   : std::vector<std::string>{"2"};
    if (exp_words.empty()) throw ConfigError("sweep.exponents is empty");
    spec.exponents.clear();
    for (const auto& w : exp_words) {
        if (w == "inf") {
            spec.exponents.push_back(LpExponent::infinity());
            continue;
        }
        const double p = parse_double_token(w, "sweep.exponents");
        if (!extended && p <= 1.0)
            throw ConfigError(
                "exponent " + w +
                " is outside the supported open range (1, inf); set sweep.extended = true");
        spec.exponents.push_back(LpExponent::finite(p, extended));
    }

    const SweepReport report = run_sweep(spec);
    const bool include_runtime = cfg.get_bool("sweep.include_runtime", false);
    write_text_file(out + "/sweep.csv", sweep_report_csv(report, include_runtime));

    std::string manifest = sweep_report_manifest(report);
    manifest += "[cli]\n";
    manifest += "command = sweep\n";
    manifest += "seed = " + describe_seed(cfg, ov) + "\n";
    manifest += "include_runtime = " + std::string(include_runtime ? "true" : "false") + "\n";
    write_text_file(out + "/manifest.txt", manifest);

    std::printf("wrote %s/sweep.csv (%zu rows, final lp_error %.6g)\n", out.c_str(),
                report.records.size(), report.records.back().lp_error);
    return kExitOk;
}

int cmd_audio(const Config& cfg, const Overrides& ov) {
    const std::string out = out_dir_from_config(cfg, ov);
    const Engine engine = engine_from_config(cfg);
    const WindowConfig wc = window_from_config(cfg);

    const std::string input = cfg.get_string("audio.input");
    if (!fs::exists(input)) throw ConfigError("audio.input file does not exist: " + input);
    const std::string output = cfg.get_string("audio.output", out + "/roundtrip.wav");

    const WavData wav = read_wav_pcm16(input);
    const int n = static_cast<int>(wav.samples.size());
    if (n < 2) throw ConfigError("audio.input holds fewer than 2 samples");

    // Audio grids start at 0 rather than being symmetric: dx = 1/rate.
    const double half = 0.5 * (n - 1) / wav.sample_rate;
    const UniformGrid grid = UniformGrid::offset(half, half, n);
    SampledSignal f{grid, std::vector<cplx>(wav.samples.begin(), wav.samples.end())};

    const double band = kPi / grid.dx();
    const std::string a_str = cfg.get_string("audio.a", "full");
    Reconstruction rec;
    double truncation = band;
    if (a_str == "full") {
        rec = filter_bank_reconstruct(f, wc.window, engine);
    } else {
        truncation = parse_double_token(a_str, "config key 'audio.a'");
        if (!(truncation > 0.0) || !std::isfinite(truncation))
            throw ConfigError("audio.a must be positive and finite (or 'full')");
        if (!wc.window.invertible_anchor())
            throw DegenerateAnchorError("window vanishes at its anchor; cannot normalize");
        rec = invert_multiplier(f, wc.window, TruncationPair::symmetric(truncation), engine);
        const cplx c = kTwoPi * std::conj(wc.window.g_at_anchor());
        rec.signal = (1.0 / c) * rec.signal;
        rec.diagnostics.tail_estimate /= std::abs(c);
    }
    if (!rec.signal.all_finite())
        throw NumericValidationError("reconstruction produced non-finite samples");

    WavData out_wav;
    out_wav.sample_rate = wav.sample_rate;
    out_wav.samples.resize(wav.samples.size());
    double max_imag = 0.0;
    for (int k = 0; k < n; ++k) {
        out_wav.samples[k] = rec.signal.values[k].real();
        max_imag = std::max(max_imag, std::fabs(rec.signal.values[k].imag()));
    }
    const WavWriteStats stats = write_wav_pcm16(output, out_wav);

    // Round-trip quality is judged on what actually landed in the file.
    const WavData quantized = read_wav_pcm16(output);
    double num = 0.0, den = 0.0;
    for (int k = 0; k < n; ++k) {
        num += wav.samples[k] * wav.samples[k];
        const double d = wav.samples[k] - quantized.samples[k];
        den += d * d;
    }
    const bool silent = num == 0.0;
    const double snr_db = den == 0.0 ? std::numeric_limits<double>::infinity()
                                     : 10.0 * std::log10(num / den);

    ordered_json meta;
    if (std::isfinite(snr_db))
        meta["snr_db"] = snr_db;
    else
        meta["snr_db"] = "inf";
    meta["clipped"] = stats.clipped;
    meta["samples"] = n;
    meta["sample_rate"] = wav.sample_rate;
    meta["seed"] = describe_seed(cfg, ov);
    meta["window"] = window_json(wc);
    meta["truncation"] = a_str == "full" ? ordered_json("full") : ordered_json(truncation);
    meta["tail_estimate"] = finite_or_null(rec.diagnostics.tail_estimate);
    meta["max_imag"] = max_imag;
    meta["silent_input"] = silent;
    meta["output"] = output;
    meta["warnings"] = rec.diagnostics.warnings;
    write_text_file(out + "/audio_metadata.json", meta.dump(2) + "\n");

    if (std::isfinite(snr_db))
        std::printf("wrote %s (snr %.1f dB, %d clipped)\n", output.c_str(), snr_db,
                    stats.clipped);
    else
        std::printf("wrote %s (snr inf, silent or exact round trip)\n", output.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"windowed Fourier transform toolkit: transforms, truncated single-integral "
                 "reconstruction, convergence sweeps, and an audio round trip"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides ov;

    auto add_common = [&](CLI::App* sub, bool with_pathway, bool with_normalize) {
        sub->add_option("--config", config_path, "run configuration file")->required();
        sub->add_option("--out", ov.out, "output directory (overrides the config)");
        sub->add_option("--seed", ov.seed, "seed recorded in the run manifest");
        if (with_pathway)
            sub->add_option("--pathway", ov.pathway, "inversion pathway (overrides the config)");
        if (with_normalize) {
            sub->add_flag_callback(
                "--normalize", [&ov] { ov.normalize = true; },
                "divide by 2 pi conj(g(x0)) (the default)");
            sub->add_flag_callback(
                "--no-normalize", [&ov] { ov.normalize = false; },
                "emit the raw operator output");
        }
    };

    CLI::App* stft = app.add_subcommand("stft", "compute a windowed transform lattice");
    add_common(stft, false, false);
    CLI::App* invert = app.add_subcommand("invert", "reconstruct a signal from its transform");
    add_common(invert, true, true);
    CLI::App* sweep = app.add_subcommand("sweep", "run a truncation convergence sweep");
    add_common(sweep, true, false);
    CLI::App* audio = app.add_subcommand("audio", "audio analysis/resynthesis round trip");
    add_common(audio, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }

    try {
        const Config cfg = Config::load(config_path);
        if (stft->parsed()) return cmd_stft(cfg, ov);
        if (invert->parsed()) return cmd_invert(cfg, ov);
        if (sweep->parsed()) return cmd_sweep(cfg, ov);
        if (audio->parsed()) return cmd_audio(cfg, ov);
        std::fprintf(stderr, "error: no command selected\n");
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const DegenerateAnchorError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitAnchor;
    } catch (const UnsupportedMediaError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitMedia;
    } catch (const NumericValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    }
}
