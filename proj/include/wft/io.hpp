#ifndef WFT_IO_HPP
#define WFT_IO_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "wft/grid.hpp"
#include "wft/stft.hpp"

namespace wft {

/// Thrown when sample data fails finiteness or layout validation at an I/O
/// boundary (distinct from configuration errors).
class NumericValidationError : public std::runtime_error {
  public:
    explicit NumericValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown for media files the tools do not handle (wrong channel count,
/// sample format, or sample rate).
class UnsupportedMediaError : public std::runtime_error {
  public:
    explicit UnsupportedMediaError(const std::string& what) : std::runtime_error(what) {}
};

// CSV serialization. All numbers are printed with 17 significant digits, so
// finite doubles survive a write/read cycle exactly.

/// Header `x,re,im`, one row per grid point.
std::string signal_to_csv(const SampledSignal& s);
/// Header `omega,re,im`; same layout as signals.
std::string spectrum_to_csv(const SampledSignal& s);
/// Header `t,omega,re,im`, row-major with the time index outermost.
std::string stft_to_csv(const StftMatrix& m);

/// Parses the signal schema; the grid is rebuilt from the first column, which
/// must be uniformly spaced with at least two points. The header must match
/// `x,re,im` (or `omega,re,im` for spectrum_from_csv).
SampledSignal signal_from_csv(const std::string& text);
SampledSignal spectrum_from_csv(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// 16-bit PCM mono WAV. Samples are normalized to [-1, 1) on read (value /
// 32768); writes re-quantize with round-half-to-even, clip to the int16
// range, and report how many samples clipped.

struct WavData {
    int sample_rate = 0;
    std::vector<double> samples;
};

struct WavWriteStats {
    int clipped = 0;
};

inline constexpr int kWavMinRate = 8000;
inline constexpr int kWavMaxRate = 48000;

/// Throws UnsupportedMediaError for anything but 16-bit PCM mono in the
/// supported rate range, and std::invalid_argument for malformed files.
WavData read_wav_pcm16(const std::string& path);
WavWriteStats write_wav_pcm16(const std::string& path, const WavData& data);

}  // namespace wft

#endif
