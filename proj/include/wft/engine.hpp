#ifndef WFT_ENGINE_HPP
#define WFT_ENGINE_HPP

#include <algorithm>
#include <array>
#include <chrono>
#include <cstddef>

namespace wft {

/// Execution policy for the heavy kernels. `reference` runs the plain serial
/// direct-evaluation loops; `fast` runs the OpenMP table/recurrence versions.
/// Both compute the same quantities; tests pin their agreement.
enum class Engine { reference, fast };

/// 16-point Gauss-Legendre rule on [-1, 1] (positive half; mirror for the rest).
inline constexpr int kGl16Half = 8;
inline constexpr double kGl16Nodes[kGl16Half] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499,
};
inline constexpr double kGl16Weights[kGl16Half] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541,
};

/// 5-point Gauss-Legendre rule on [-1, 1], listed center-out.
inline constexpr int kGl5Count = 5;
inline constexpr double kGl5Nodes[kGl5Count] = {
    0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640,
};
inline constexpr double kGl5Weights[kGl5Count] = {
    0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891, 0.2369268850561891,
};

/// Full 16-node rule on [-1, 1], nodes in ascending order with their weights.
inline std::array<double, 16> gl16_full_nodes() {
    std::array<double, 16> t{};
    for (int i = 0; i < kGl16Half; ++i) {
        t[kGl16Half - 1 - i] = -kGl16Nodes[i];
        t[kGl16Half + i] = kGl16Nodes[i];
    }
    return t;
}

inline std::array<double, 16> gl16_full_weights() {
    std::array<double, 16> w{};
    for (int i = 0; i < kGl16Half; ++i) {
        w[kGl16Half - 1 - i] = kGl16Weights[i];
        w[kGl16Half + i] = kGl16Weights[i];
    }
    return w;
}

/// Integrate fn over [a, b] with one 16-point Gauss-Legendre panel.
template <typename F>
auto gl16_panel(double a, double b, F&& fn) {
    const double mid = 0.5 * (a + b);
    const double rad = 0.5 * (b - a);
    auto acc = fn(mid + rad * kGl16Nodes[0]) * kGl16Weights[0];
    acc += fn(mid - rad * kGl16Nodes[0]) * kGl16Weights[0];
    for (int q = 1; q < kGl16Half; ++q) {
        acc += fn(mid + rad * kGl16Nodes[q]) * kGl16Weights[q];
        acc += fn(mid - rad * kGl16Nodes[q]) * kGl16Weights[q];
    }
    return acc * rad;
}

/// Integrate fn over [a, b] with one 5-point Gauss-Legendre panel.
template <typename F>
auto gl5_panel(double a, double b, F&& fn) {
    const double mid = 0.5 * (a + b);
    const double rad = 0.5 * (b - a);
    auto acc = fn(mid) * kGl5Weights[0];
    for (int q = 1; q < kGl5Count; ++q) acc += fn(mid + rad * kGl5Nodes[q]) * kGl5Weights[q];
    return acc * rad;
}

/// Composite 16-point Gauss-Legendre with panels no wider than max_panel.
template <typename F>
auto gl16_composite(double a, double b, double max_panel, F&& fn) {
    const int panels = std::max(1, static_cast<int>((b - a) / max_panel) + 1);
    const double step = (b - a) / panels;
    auto acc = gl16_panel(a, a + step, fn);
    for (int p = 1; p < panels; ++p) acc += gl16_panel(a + p * step, a + (p + 1) * step, fn);
    return acc;
}

class StopwatchMs {
  public:
    StopwatchMs() : start_(std::chrono::steady_clock::now()) {}
    double elapsed() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace wft

#endif
