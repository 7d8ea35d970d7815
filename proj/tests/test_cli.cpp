#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "wft/io.hpp"

using namespace wft;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kScratch = "cli_scratch";

fs::path case_dir(const std::string& name) {
    const fs::path dir = kScratch / name;
    fs::create_directories(dir);
    return dir;
}

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const fs::path& dir, const std::string& args) {
    const std::string out_file = (dir / "stdout.txt").string();
    const std::string err_file = (dir / "stderr.txt").string();
    const std::string cmd =
        std::string(WFT_CLI_PATH) + " " + args + " > " + out_file + " 2> " + err_file;
    const int status = std::system(cmd.c_str());
    RunResult r;
    if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
    if (fs::exists(out_file)) r.out = read_text_file(out_file);
    if (fs::exists(err_file)) r.err = read_text_file(err_file);
    return r;
}

std::string write_config(const fs::path& dir, const std::string& text) {
    const std::string path = (dir / "run.cfg").string();
    write_text_file(path, text);
    return path;
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    if (!text.empty() && text.back() != '\n') ++n;
    return n;
}

json load_json(const fs::path& path) { return json::parse(read_text_file(path.string())); }

/// Splits a CSV body into per-line field vectors, header excluded.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        const std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) continue;
        if (first) {
            first = false;
            continue;
        }
        std::vector<std::string> fields;
        std::size_t f = 0;
        while (true) {
            const std::size_t c = line.find(',', f);
            fields.push_back(line.substr(f, c - f));
            if (c == std::string::npos) break;
            f = c + 1;
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

}  // namespace

TEST_CASE("stft writes the transform lattice with the expected peak") {
    const fs::path dir = case_dir("stft");
    const std::string cfg = write_config(dir,
                                         "signal.fixture = gaussian\n"
                                         "grid.half_width = 8\n"
                                         "grid.points = 513\n"
                                         "stft.t_half_width = 2\n"
                                         "stft.t_points = 3\n"
                                         "stft.omega_half_width = 2\n"
                                         "stft.omega_points = 3\n");
    const RunResult r = run_cli(dir, "stft --config " + cfg + " --out " + dir.string());
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    REQUIRE(fs::exists(dir / "stft.csv"));
    REQUIRE(fs::exists(dir / "manifest.txt"));

    const auto rows = csv_rows(read_text_file((dir / "stft.csv").string()));
    REQUIRE(rows.size() == 9);
    bool found = false;
    for (const auto& row : rows) {
        REQUIRE(row.size() == 4);
        if (std::stod(row[0]) == 0.0 && std::stod(row[1]) == 0.0) {
            found = true;
            // integral of exp(-x^2) = sqrt(pi)
            CHECK(std::stod(row[2]) == doctest::Approx(1.7724538509055161).epsilon(1e-9));
            CHECK(std::fabs(std::stod(row[3])) < 1e-12);
        }
    }
    CHECK(found);
    const std::string manifest = read_text_file((dir / "manifest.txt").string());
    CHECK(manifest.find("command = stft") != std::string::npos);
    CHECK(manifest.find("seed = 24301") != std::string::npos);
}

TEST_CASE("stft of the zero fixture is identically zero") {
    const fs::path dir = case_dir("stft_zero");
    const std::string cfg = write_config(dir,
                                         "signal.fixture = zero\n"
                                         "grid.half_width = 4\n"
                                         "grid.points = 65\n"
                                         "stft.t_points = 5\n"
                                         "stft.t_half_width = 2\n"
                                         "stft.omega_points = 5\n"
                                         "stft.omega_half_width = 2\n");
    const RunResult r = run_cli(dir, "stft --config " + cfg + " --out " + dir.string());
    CHECK(r.code == 0);
    for (const auto& row : csv_rows(read_text_file((dir / "stft.csv").string()))) {
        CHECK(std::stod(row[2]) == 0.0);
        CHECK(std::stod(row[3]) == 0.0);
    }
}

TEST_CASE("stft accepts a signal csv as input") {
    const fs::path dir = case_dir("stft_input");
    const UniformGrid grid = UniformGrid::symmetric(8.0, 129);
    SampledSignal f = SampledSignal::zero(grid);
    for (int k = 0; k < grid.n; ++k) {
        const double x = grid.point(k);
        f.values[k] = std::exp(-0.5 * x * x);
    }
    write_text_file((dir / "input.csv").string(), signal_to_csv(f));
    const std::string cfg = write_config(dir,
                                         "signal.input = " + (dir / "input.csv").string() +
                                             "\n"
                                             "stft.t_points = 3\n"
                                             "stft.t_half_width = 1\n"
                                             "stft.omega_points = 3\n"
                                             "stft.omega_half_width = 1\n");
    const RunResult r = run_cli(dir, "stft --config " + cfg + " --out " + dir.string());
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "stft.csv"));
}

TEST_CASE("malformed configuration exits with code 2 and one diagnostic line") {
    const fs::path dir = case_dir("bad_config");
    const std::string cfg = write_config(dir, "grid.points = banana\n");
    const RunResult r = run_cli(dir, "stft --config " + cfg + " --out " + dir.string());
    CHECK(r.code == 2);
    CHECK(count_lines(r.err) == 1);
    CHECK(r.err.substr(0, 7) == "error: ");

    const std::string broken = write_config(dir, "no equals sign here\n");
    CHECK(run_cli(dir, "stft --config " + broken).code == 2);
    CHECK(run_cli(dir, "stft --config " + (dir / "missing.cfg").string()).code == 2);
}

TEST_CASE("usage errors share the configuration exit code") {
    const fs::path dir = case_dir("usage");
    CHECK(run_cli(dir, "").code == 2);
    CHECK(run_cli(dir, "transmogrify").code == 2);
    CHECK(run_cli(dir, "stft").code == 2);  // --config is required
    CHECK(run_cli(dir, "--help").code == 0);
}

TEST_CASE("invert reconstructs a gaussian within the advertised tolerance") {
    const fs::path dir = case_dir("invert");
    const std::string cfg = write_config(dir,
                                         "signal.fixture = gaussian\n"
                                         "pathway = multiplier\n"
                                         "truncation.a = 8\n");
    const RunResult r = run_cli(dir, "invert --config " + cfg + " --out " + dir.string());
    CHECK(r.code == 0);
    REQUIRE(fs::exists(dir / "reconstruction.csv"));
    REQUIRE(fs::exists(dir / "metadata.json"));

    const json meta = load_json(dir / "metadata.json");
    CHECK(meta["pathway"] == "multiplier");
    CHECK(meta["a1"] == 8.0);
    CHECK(meta["a2"] == 8.0);
    CHECK(meta["normalize"] == true);
    CHECK(meta["relative_l2_vs_input"].get<double>() < 1e-4);
    CHECK(meta["tail_estimate"].get<double>() > 0.0);
    CHECK(meta["tail_estimate"].get<double>() < 1e-7);
    CHECK(meta["window"]["kind"] == "gaussian");

    // The reconstruction csv parses back onto the signal grid.
    const SampledSignal rec =
        signal_from_csv(read_text_file((dir / "reconstruction.csv").string()));
    CHECK(rec.grid.n == 2049);
    CHECK(rec.all_finite());
}

TEST_CASE("invert honors the pathway override and the raw normalization switch") {
    const fs::path dir = case_dir("invert_kernel");
    const std::string cfg = write_config(dir,
                                         "signal.fixture = gaussian\n"
                                         "grid.points = 513\n"
                                         "pathway = multiplier\n"
                                         "truncation.a = 6\n");
    const RunResult r = run_cli(dir, "invert --config " + cfg + " --out " + dir.string() +
                                         " --pathway kernel");
    CHECK(r.code == 0);
    const json meta = load_json(dir / "metadata.json");
    CHECK(meta["pathway"] == "kernel");
    CHECK(meta["relative_l2_vs_input"].get<double>() < 1e-4);

    const fs::path raw_dir = case_dir("invert_raw");
    const RunResult raw = run_cli(raw_dir, "invert --config " + cfg + " --out " +
                                               raw_dir.string() + " --no-normalize");
    CHECK(raw.code == 0);
    const json raw_meta = load_json(raw_dir / "metadata.json");
    CHECK(raw_meta["normalize"] == false);
    // Compared against 2 pi conj(g(x0)) f, the raw output is just as accurate.
    CHECK(raw_meta["relative_l2_vs_input"].get<double>() < 1e-4);

    // The raw reconstruction is 2 pi times the normalized one for this window.
    const SampledSignal a =
        signal_from_csv(read_text_file((dir / "reconstruction.csv").string()));
    const SampledSignal b =
        signal_from_csv(read_text_file((raw_dir / "reconstruction.csv").string()));
    double max_diff = 0.0;
    for (int k = 0; k < a.grid.n; ++k)
        max_diff = std::max(max_diff,
                            std::abs(b.values[k] - 2.0 * 3.14159265358979323846 * a.values[k]));
    CHECK(max_diff < 1e-9);
}

TEST_CASE("invert runs the classical two-variable pathway") {
    const fs::path dir = case_dir("invert_double");
    const std::string cfg = write_config(dir,
                                         "signal.fixture = gaussian\n"
                                         "grid.points = 513\n"
                                         "pathway = double\n"
                                         "double.t_half_width = 12\n"
                                         "double.t_points = 129\n"
                                         "double.omega_half_width = 12\n"
                                         "double.omega_points = 193\n");
    const RunResult r = run_cli(dir, "invert --config " + cfg + " --out " + dir.string());
    CHECK(r.code == 0);
    const json meta = load_json(dir / "metadata.json");
    CHECK(meta["pathway"] == "double");
    CHECK(meta["a1"].is_null());
    CHECK(meta["tail_estimate"].is_null());
    CHECK(meta["relative_l2_vs_input"].get<double>() < 1e-3);
}

TEST_CASE("invert rejects a window that vanishes at its anchor") {
    const fs::path dir = case_dir("invert_anchor");
    const std::string cfg = write_config(dir,
                                         "signal.fixture = gaussian\n"
                                         "grid.points = 257\n"
                                         "window.kind = hann\n"
                                         "window.sigma = 1\n"
                                         "window.x0 = 1\n"
                                         "truncation.a = 4\n");
    const RunResult r = run_cli(dir, "invert --config " + cfg + " --out " + dir.string());
    CHECK(r.code == 4);
    CHECK(count_lines(r.err) == 1);
    // Without normalization there is nothing to divide by, so the run passes.
    const RunResult raw =
        run_cli(dir, "invert --config " + cfg + " --out " + dir.string() + " --no-normalize");
    CHECK(raw.code == 0);
}

TEST_CASE("invert validates pathway-specific constraints") {
    const fs::path dir = case_dir("invert_validate");
    const std::string asym = write_config(dir,
                                          "signal.fixture = gaussian\n"
                                          "grid.points = 257\n"
                                          "pathway = modulation\n"
                                          "truncation.a1 = 4\n"
                                          "truncation.a2 = 8\n");
    CHECK(run_cli(dir, "invert --config " + asym + " --out " + dir.string()).code == 2);

    const fs::path ok_dir = case_dir("invert_modulation");
    const std::string sym = write_config(ok_dir,
                                         "signal.fixture = gaussian\n"
                                         "grid.points = 513\n"
                                         "pathway = modulation\n"
                                         "truncation.a = 6\n");
    const RunResult ok = run_cli(ok_dir, "invert --config " + sym + " --out " + ok_dir.string());
    CHECK(ok.code == 0);
    CHECK(load_json(ok_dir / "metadata.json")["relative_l2_vs_input"].get<double>() < 1e-4);

    const fs::path bad_dir = case_dir("invert_badpath");
    const std::string bad = write_config(bad_dir,
                                         "signal.fixture = gaussian\n"
                                         "pathway = sideways\n");
    CHECK(run_cli(bad_dir, "invert --config " + bad + " --out " + bad_dir.string()).code == 2);
}

TEST_CASE("non-finite input samples exit with the numeric validation code") {
    const fs::path dir = case_dir("invert_nan");
    write_text_file((dir / "bad.csv").string(), "x,re,im\n0,nan,0\n0.5,1,0\n1,1,0\n");
    const std::string cfg = write_config(dir, "signal.input = " + (dir / "bad.csv").string() + "\n");
    const RunResult r = run_cli(dir, "invert --config " + cfg + " --out " + dir.string());
    CHECK(r.code == 3);
    CHECK(count_lines(r.err) == 1);
}

TEST_CASE("sweep emits a decreasing error curve and reruns byte-identically") {
    const fs::path a_dir = case_dir("sweep_a");
    const std::string cfg_text =
        "signal.fixture = gaussian\n"
        "grid.points = 513\n"
        "pathway = multiplier\n"
        "sweep.truncations = 2 4 8\n"
        "sweep.exponents = 2 inf\n";
    const std::string cfg_a = write_config(a_dir, cfg_text);
    const RunResult ra = run_cli(a_dir, "sweep --config " + cfg_a + " --out " + a_dir.string());
    CHECK(ra.code == 0);

    const std::string csv = read_text_file((a_dir / "sweep.csv").string());
    const auto rows = csv_rows(csv);
    REQUIRE(rows.size() == 6);
    // Column 5 is lp_error; rows come in truncation-major order.
    for (int p = 0; p < 2; ++p) {
        const double e2 = std::stod(rows[0 + p][5]);
        const double e4 = std::stod(rows[2 + p][5]);
        const double e8 = std::stod(rows[4 + p][5]);
        CHECK(e2 > e4);
        CHECK(e4 > e8);
    }
    for (const auto& row : rows) CHECK(row[9] == "0");  // runtime suppressed by default

    const fs::path b_dir = case_dir("sweep_b");
    const std::string cfg_b = write_config(b_dir, cfg_text);
    const RunResult rb = run_cli(b_dir, "sweep --config " + cfg_b + " --out " + b_dir.string());
    CHECK(rb.code == 0);
    CHECK(read_text_file((b_dir / "sweep.csv").string()) == csv);
    CHECK(read_text_file((b_dir / "manifest.txt").string()) ==
          read_text_file((a_dir / "manifest.txt").string()));

    const std::string manifest = read_text_file((a_dir / "manifest.txt").string());
    CHECK(manifest.find("noise_seed = 24301") != std::string::npos);
    CHECK(manifest.find("command = sweep") != std::string::npos);

    // A recorded --seed shows up in the cli section.
    const fs::path c_dir = case_dir("sweep_seeded");
    const std::string cfg_c = write_config(c_dir, cfg_text);
    const RunResult rc =
        run_cli(c_dir, "sweep --config " + cfg_c + " --out " + c_dir.string() + " --seed 99");
    CHECK(rc.code == 0);
    CHECK(read_text_file((c_dir / "manifest.txt").string()).find("seed = 99") !=
          std::string::npos);
}

TEST_CASE("sweep validates truncation and exponent lists up front") {
    const fs::path dir = case_dir("sweep_validate");
    const std::string empty = write_config(dir,
                                           "signal.fixture = gaussian\n"
                                           "grid.points = 257\n"
                                           "sweep.truncations =\n");
    CHECK(run_cli(dir, "sweep --config " + empty + " --out " + dir.string()).code == 2);

    const fs::path p1_dir = case_dir("sweep_p1");
    const std::string p1 = write_config(p1_dir,
                                        "signal.fixture = gaussian\n"
                                        "grid.points = 257\n"
                                        "sweep.exponents = 1\n");
    const RunResult rp1 = run_cli(p1_dir, "sweep --config " + p1 + " --out " + p1_dir.string());
    CHECK(rp1.code == 2);
    CHECK(rp1.err.find("extended") != std::string::npos);

    const fs::path ext_dir = case_dir("sweep_p1_ext");
    const std::string ext = write_config(ext_dir,
                                         "signal.fixture = gaussian\n"
                                         "grid.points = 257\n"
                                         "sweep.truncations = 2 4\n"
                                         "sweep.exponents = 1\n"
                                         "sweep.extended = true\n");
    CHECK(run_cli(ext_dir, "sweep --config " + ext + " --out " + ext_dir.string()).code == 0);

    const fs::path dd = case_dir("sweep_double");
    const std::string dbl = write_config(dd,
                                         "signal.fixture = gaussian\n"
                                         "grid.points = 257\n"
                                         "pathway = double\n");
    CHECK(run_cli(dd, "sweep --config " + dbl + " --out " + dd.string()).code == 2);

    const fs::path fi = case_dir("sweep_input");
    write_text_file((fi / "s.csv").string(), "x,re,im\n0,1,0\n1,1,0\n");
    const std::string finp = write_config(fi, "signal.input = " + (fi / "s.csv").string() + "\n");
    CHECK(run_cli(fi, "sweep --config " + finp + " --out " + fi.string()).code == 2);
}

TEST_CASE("audio round trip clears the quality floor on a chirp") {
    const fs::path dir = case_dir("audio_chirp");
    const int rate = 8000;
    const int n = rate;  // one second
    WavData chirp;
    chirp.sample_rate = rate;
    chirp.samples.resize(n);
    const double fade = 0.05;
    for (int k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / rate;
        double env = 0.8;
        if (t < fade) env *= 0.5 * (1.0 - std::cos(3.14159265358979324 * t / fade));
        const double t_end = (n - 1.0 - k) / rate;
        if (t_end < fade) env *= 0.5 * (1.0 - std::cos(3.14159265358979324 * t_end / fade));
        chirp.samples[k] = env * std::sin(2.0 * 3.14159265358979324 * (100.0 * t + 450.0 * t * t));
    }
    write_wav_pcm16((dir / "chirp.wav").string(), chirp);

    const std::string cfg = write_config(dir,
                                         "audio.input = " + (dir / "chirp.wav").string() +
                                             "\n"
                                             "window.kind = hann\n"
                                             "window.sigma = 0.02\n"
                                             "audio.a = full\n");
    const RunResult r = run_cli(dir, "audio --config " + cfg + " --out " + dir.string());
    CHECK(r.code == 0);
    REQUIRE(fs::exists(dir / "roundtrip.wav"));
    REQUIRE(fs::exists(dir / "audio_metadata.json"));
    const json meta = load_json(dir / "audio_metadata.json");
    // Full-band resynthesis lands within a fraction of one quantization step,
    // so the file round trip is either bit-exact ("inf") or far above 60 dB.
    if (meta["snr_db"].is_string())
        CHECK(meta["snr_db"] == "inf");
    else
        CHECK(meta["snr_db"].get<double>() >= 60.0);
    CHECK(meta["truncation"] == "full");
    CHECK(meta["sample_rate"] == rate);
    CHECK(meta["samples"] == n);
    CHECK(meta["max_imag"].get<double>() < 1e-6);
    CHECK(meta["silent_input"] == false);
    CHECK(meta["tail_estimate"].get<double>() < 1e-4);

    // Cutting the band at ~600 Hz discards the top of the sweep: the report
    // must show a finite, visibly degraded ratio rather than the sentinel.
    const fs::path cut_dir = case_dir("audio_cut");
    const std::string cut_cfg = write_config(cut_dir,
                                             "audio.input = " + (dir / "chirp.wav").string() +
                                                 "\n"
                                                 "window.kind = hann\n"
                                                 "window.sigma = 0.02\n"
                                                 "audio.a = 3770\n");
    const RunResult cut = run_cli(cut_dir, "audio --config " + cut_cfg + " --out " + cut_dir.string());
    CHECK(cut.code == 0);
    const json cut_meta = load_json(cut_dir / "audio_metadata.json");
    REQUIRE(cut_meta["snr_db"].is_number());
    CHECK(cut_meta["snr_db"].get<double>() < 60.0);
    CHECK(cut_meta["snr_db"].get<double>() > 0.0);
    CHECK(cut_meta["truncation"] == 3770.0);
    CHECK(cut_meta["tail_estimate"].get<double>() > 0.0);
}

TEST_CASE("silent audio reports an infinite ratio and stays silent") {
    const fs::path dir = case_dir("audio_silence");
    WavData silence;
    silence.sample_rate = 8000;
    silence.samples.assign(2000, 0.0);
    write_wav_pcm16((dir / "silence.wav").string(), silence);
    const std::string cfg = write_config(dir,
                                         "audio.input = " + (dir / "silence.wav").string() +
                                             "\n"
                                             "window.kind = gaussian\n"
                                             "window.sigma = 0.01\n");
    const RunResult r = run_cli(dir, "audio --config " + cfg + " --out " + dir.string());
    CHECK(r.code == 0);
    const json meta = load_json(dir / "audio_metadata.json");
    CHECK(meta["snr_db"] == "inf");
    CHECK(meta["silent_input"] == true);
    CHECK(meta["clipped"] == 0);
    const WavData out = read_wav_pcm16((dir / "roundtrip.wav").string());
    for (double v : out.samples) CHECK(v == 0.0);
}

TEST_CASE("audio rejects media it cannot decode") {
    const fs::path dir = case_dir("audio_reject");
    // Hand-rolled stereo file: 2 channels, 2 frames.
    std::string fmt;
    auto u16 = [&](unsigned v) {
        fmt.push_back(char(v & 0xff));
        fmt.push_back(char((v >> 8) & 0xff));
    };
    auto u32 = [&](unsigned long v) {
        for (int s = 0; s < 32; s += 8) fmt.push_back(char((v >> s) & 0xff));
    };
    u16(1);
    u16(2);
    u32(8000);
    u32(8000 * 4);
    u16(4);
    u16(16);
    std::string body = "WAVE";
    body += "fmt ";
    std::string len4;
    for (int s = 0; s < 32; s += 8) len4.push_back(char((fmt.size() >> s) & 0xff));
    body += len4 + fmt;
    body += "data";
    std::string dlen;
    for (int s = 0; s < 32; s += 8) dlen.push_back(char((8UL >> s) & 0xff));
    body += dlen;
    body += std::string(8, '\0');
    std::string riff = "RIFF";
    for (int s = 0; s < 32; s += 8) riff.push_back(char((body.size() >> s) & 0xff));
    write_text_file((dir / "stereo.wav").string(), riff + body);

    const std::string cfg = write_config(
        dir, "audio.input = " + (dir / "stereo.wav").string() + "\nwindow.sigma = 0.01\n");
    const RunResult r = run_cli(dir, "audio --config " + cfg + " --out " + dir.string());
    CHECK(r.code == 5);
    CHECK(count_lines(r.err) == 1);

    const fs::path miss = case_dir("audio_missing");
    const std::string missing =
        write_config(miss, "audio.input = " + (miss / "nope.wav").string() + "\n");
    CHECK(run_cli(miss, "audio --config " + missing + " --out " + miss.string()).code == 2);
}
