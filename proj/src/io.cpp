#include "wft/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace wft {
namespace {

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string rows_to_csv(const SampledSignal& s, const char* header) {
    std::string out = header;
    out += "\n";
    for (int k = 0; k < s.grid.n; ++k) {
        out += num17(s.grid.point(k));
        out += ",";
        out += num17(s.values[k].real());
        out += ",";
        out += num17(s.values[k].imag());
        out += "\n";
    }
    return out;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        pos = eol + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

double parse_field(const std::string& field, int line_no) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        char buf[96];
        std::snprintf(buf, sizeof buf, "line %d: '%s' is not a number", line_no,
                      field.substr(0, 40).c_str());
        throw std::invalid_argument(buf);
    }
    return v;
}

SampledSignal parse_rows(const std::string& text, const char* header) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty() || lines[0] != header)
        throw std::invalid_argument(std::string("expected CSV header '") + header + "'");
    const int n = static_cast<int>(lines.size()) - 1;
    if (n < 2) throw std::invalid_argument("need at least two sample rows");

    std::vector<double> xs(n);
    std::vector<cplx> values(n);
    for (int k = 0; k < n; ++k) {
        const std::string& line = lines[k + 1];
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "line %d: expected three comma-separated fields", k + 2);
            throw std::invalid_argument(buf);
        }
        xs[k] = parse_field(line.substr(0, c1), k + 2);
        values[k] = cplx{parse_field(line.substr(c1 + 1, c2 - c1 - 1), k + 2),
                         parse_field(line.substr(c2 + 1), k + 2)};
    }

    const double span = xs.back() - xs.front();
    if (!(span > 0.0) || !std::isfinite(span))
        throw std::invalid_argument("sample positions must increase");
    const double dx = span / (n - 1);
    const double tol = 1e-9 * std::max(1.0, std::fabs(span));
    for (int k = 0; k < n; ++k)
        if (std::fabs(xs[k] - (xs.front() + k * dx)) > tol)
            throw std::invalid_argument("sample positions are not uniformly spaced");

    const UniformGrid grid =
        UniformGrid::offset(0.5 * (xs.front() + xs.back()), 0.5 * span, n);
    return SampledSignal{grid, std::move(values)};
}

std::uint32_t read_u32(const unsigned char* p) {
    return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
           std::uint32_t(p[3]) << 24;
}

std::uint16_t read_u16(const unsigned char* p) {
    return std::uint16_t(p[0] | p[1] << 8);
}

void push_u32(std::string& out, std::uint32_t v) {
    out.push_back(char(v & 0xff));
    out.push_back(char((v >> 8) & 0xff));
    out.push_back(char((v >> 16) & 0xff));
    out.push_back(char((v >> 24) & 0xff));
}

void push_u16(std::string& out, std::uint16_t v) {
    out.push_back(char(v & 0xff));
    out.push_back(char((v >> 8) & 0xff));
}

}  // namespace

std::string signal_to_csv(const SampledSignal& s) { return rows_to_csv(s, "x,re,im"); }

std::string spectrum_to_csv(const SampledSignal& s) { return rows_to_csv(s, "omega,re,im"); }

std::string stft_to_csv(const StftMatrix& m) {
    std::string out = "t,omega,re,im\n";
    for (int ti = 0; ti < m.rows(); ++ti) {
        const std::string t = num17(m.time_grid.point(ti));
        for (int fj = 0; fj < m.cols(); ++fj) {
            const cplx v = m.at(ti, fj);
            out += t;
            out += ",";
            out += num17(m.freq_grid.point(fj));
            out += ",";
            out += num17(v.real());
            out += ",";
            out += num17(v.imag());
            out += "\n";
        }
    }
    return out;
}

SampledSignal signal_from_csv(const std::string& text) { return parse_rows(text, "x,re,im"); }

SampledSignal spectrum_from_csv(const std::string& text) {
    return parse_rows(text, "omega,re,im");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

WavData read_wav_pcm16(const std::string& path) {
    const std::string raw = read_text_file(path);
    const auto* bytes = reinterpret_cast<const unsigned char*>(raw.data());
    const std::size_t size = raw.size();
    if (size < 12 || std::memcmp(bytes, "RIFF", 4) != 0 || std::memcmp(bytes + 8, "WAVE", 4) != 0)
        throw std::invalid_argument("not a RIFF/WAVE file: " + path);

    bool have_fmt = false;
    int channels = 0, bits = 0, format = 0, rate = 0;
    std::size_t data_off = 0, data_len = 0;

    std::size_t pos = 12;
    while (pos + 8 <= size) {
        const std::uint32_t chunk_len = read_u32(bytes + pos + 4);
        const std::size_t body = pos + 8;
        if (body + chunk_len > size) throw std::invalid_argument("truncated WAV chunk");
        if (std::memcmp(bytes + pos, "fmt ", 4) == 0) {
            if (chunk_len < 16) throw std::invalid_argument("malformed fmt chunk");
            format = read_u16(bytes + body + 0);
            channels = read_u16(bytes + body + 2);
            rate = static_cast<int>(read_u32(bytes + body + 4));
            bits = read_u16(bytes + body + 14);
            have_fmt = true;
        } else if (std::memcmp(bytes + pos, "data", 4) == 0) {
            data_off = body;
            data_len = chunk_len;
        }
        pos = body + chunk_len + (chunk_len & 1);
    }
    if (!have_fmt || data_off == 0) throw std::invalid_argument("WAV missing fmt or data chunk");

    if (format != 1) throw UnsupportedMediaError("only PCM WAV is supported");
    if (channels != 1) throw UnsupportedMediaError("only mono WAV is supported");
    if (bits != 16) throw UnsupportedMediaError("only 16-bit WAV is supported");
    if (rate < kWavMinRate || rate > kWavMaxRate) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "sample rate %d outside supported range %d-%d", rate,
                      kWavMinRate, kWavMaxRate);
        throw UnsupportedMediaError(buf);
    }
    if (data_len % 2 != 0) throw std::invalid_argument("odd-sized 16-bit data chunk");

    WavData wav;
    wav.sample_rate = rate;
    wav.samples.resize(data_len / 2);
    for (std::size_t i = 0; i < wav.samples.size(); ++i) {
        const auto u = read_u16(bytes + data_off + 2 * i);
        wav.samples[i] = static_cast<std::int16_t>(u) / 32768.0;
    }
    return wav;
}

WavWriteStats write_wav_pcm16(const std::string& path, const WavData& data) {
    if (data.sample_rate < kWavMinRate || data.sample_rate > kWavMaxRate) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "sample rate %d outside supported range %d-%d",
                      data.sample_rate, kWavMinRate, kWavMaxRate);
        throw UnsupportedMediaError(buf);
    }
    for (double v : data.samples)
        if (!std::isfinite(v)) throw NumericValidationError("non-finite audio sample");

    WavWriteStats stats;
    std::string pcm;
    pcm.reserve(2 * data.samples.size());
    for (double v : data.samples) {
        const double scaled = std::nearbyint(v * 32768.0);  // ties to even
        double clipped = scaled;
        if (scaled > 32767.0) {
            clipped = 32767.0;
            ++stats.clipped;
        } else if (scaled < -32768.0) {
            clipped = -32768.0;
            ++stats.clipped;
        }
        push_u16(pcm, static_cast<std::uint16_t>(static_cast<std::int16_t>(clipped)));
    }

    std::string out;
    out.reserve(44 + pcm.size());
    out += "RIFF";
    push_u32(out, static_cast<std::uint32_t>(36 + pcm.size()));
    out += "WAVEfmt ";
    push_u32(out, 16);
    push_u16(out, 1);  // PCM
    push_u16(out, 1);  // mono
    push_u32(out, static_cast<std::uint32_t>(data.sample_rate));
    push_u32(out, static_cast<std::uint32_t>(data.sample_rate * 2));  // byte rate
    push_u16(out, 2);   // block align
    push_u16(out, 16);  // bits per sample
    out += "data";
    push_u32(out, static_cast<std::uint32_t>(pcm.size()));
    out += pcm;
    write_text_file(path, out);
    return stats;
}

}  // namespace wft
