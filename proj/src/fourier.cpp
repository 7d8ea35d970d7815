#include "wft/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

#include "phase_sum.hpp"

namespace wft {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

using detail::kResyncStride;
using detail::phase_sum;
using detail::phase_sum_direct;

}  // namespace

UniformGrid default_frequency_grid(const UniformGrid& time_grid) {
    return UniformGrid::symmetric(kPi / time_grid.dx(), time_grid.n);
}

SampledSignal forward_ft(const SampledSignal& f, const UniformGrid& freq_grid, Engine engine) {
    SampledSignal out = SampledSignal::zero(freq_grid);
    const int m = freq_grid.n;
    if (engine == Engine::reference) {
        for (int j = 0; j < m; ++j) out.values[j] = phase_sum_direct(f, freq_grid.point(j), -1.0);
    } else {
#pragma omp parallel for schedule(static)
        for (int j = 0; j < m; ++j) out.values[j] = phase_sum(f, freq_grid.point(j), -1.0);
    }
    return out;
}

SampledSignal forward_ft(const SampledSignal& f, Engine engine) {
    return forward_ft(f, default_frequency_grid(f.grid), engine);
}

SampledSignal inverse_ft(const SampledSignal& spectrum, const UniformGrid& time_grid, Engine engine) {
    SampledSignal out = SampledSignal::zero(time_grid);
    const int m = time_grid.n;
    if (engine == Engine::reference) {
        for (int j = 0; j < m; ++j)
            out.values[j] = phase_sum_direct(spectrum, time_grid.point(j), +1.0) / kTwoPi;
    } else {
#pragma omp parallel for schedule(static)
        for (int j = 0; j < m; ++j)
            out.values[j] = phase_sum(spectrum, time_grid.point(j), +1.0) / kTwoPi;
    }
    return out;
}

cplx forward_ft_point(const SampledSignal& f, double omega) { return phase_sum(f, omega, -1.0); }

cplx inverse_ft_point(const SampledSignal& spectrum, double x) {
    return phase_sum(spectrum, x, +1.0) / kTwoPi;
}

SampledSignal modulate(const SampledSignal& f, double omega) {
    SampledSignal out = f;
    const int n = f.grid.n;
    for (int k = 0; k < n; ++k) out.values[k] *= std::polar(1.0, -f.grid.point(k) * omega);
    return out;
}

SampledSignal band_restrict(const SampledSignal& f, double band_limit, Engine engine,
                            std::vector<std::string>* warnings) {
    if (!(band_limit > 0.0)) throw std::invalid_argument("band_restrict: band limit must be positive");
    const UniformGrid& g = f.grid;
    const int n = g.n;
    const double dx = g.dx();
    const double grid_band = kPi / dx;
    double a = band_limit;
    if (a > grid_band * (1.0 + 1e-12)) {
        if (warnings) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "band limit %.6g exceeds the grid band %.6g; clamped to the grid band", a,
                          grid_band);
            warnings->push_back(buf);
        }
        a = grid_band;
    }

    SampledSignal out = SampledSignal::zero(g);
    if (engine == Engine::reference) {
        // Time-domain convolution with sin(a u)/(pi u) on the lag table.
        std::vector<double> lag(2 * n - 1);
        for (int j = -(n - 1); j <= n - 1; ++j) {
            const double u = j * dx;
            lag[j + n - 1] = j == 0 ? a / kPi : std::sin(a * u) / (kPi * u);
        }
        for (int m = 0; m < n; ++m) {
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k) acc += f.values[k] * lag[m - k + n - 1];
            acc -= 0.5 * (f.values[0] * lag[m + n - 1] + f.values[n - 1] * lag[m - (n - 1) + n - 1]);
            out.values[m] = acc * dx;
        }
        return out;
    }

    // Spectral synthesis: evaluate the trapezoid transform on Gauss-Legendre
    // nodes covering [-a, a], then sum the band integral per output point.
    // Panel widths keep every exp(i x u) factor slowly varying on a panel.
    const double x_extent = std::max(std::fabs(g.point(0)), std::fabs(g.point(n - 1)));
    const double max_panel = 6.0 / std::max(1.0, x_extent);
    const int panels = std::max(1, static_cast<int>(2.0 * a / max_panel) + 1);
    const double h = 2.0 * a / panels;
    const std::array<double, 16> gt = gl16_full_nodes();
    const std::array<double, 16> gw = gl16_full_weights();

    std::vector<double> nodes(static_cast<size_t>(panels) * 16);
    for (int p = 0; p < panels; ++p) {
        const double mid = -a + (p + 0.5) * h;
        for (int i = 0; i < 16; ++i) nodes[p * 16 + i] = mid + 0.5 * h * gt[i];
    }

    std::vector<cplx> hat(nodes.size());
#pragma omp parallel for schedule(static)
    for (int q = 0; q < static_cast<int>(nodes.size()); ++q) hat[q] = phase_sum(f, nodes[q], -1.0);

#pragma omp parallel for schedule(static)
    for (int m = 0; m < n; ++m) {
        const double x = g.point(m);
        const cplx step = std::polar(1.0, x * h);  // node i advances by h per panel
        cplx total = 0.0;
        for (int i = 0; i < 16; ++i) {
            cplx acc = 0.0;
            cplx ph = 0.0;
            for (int p = 0; p < panels; ++p) {
                if (p % kResyncStride == 0) ph = std::polar(1.0, x * nodes[p * 16 + i]);
                acc += hat[p * 16 + i] * ph;
                ph *= step;
            }
            total += gw[i] * acc;
        }
        out.values[m] = total * (0.5 * h) / kTwoPi;
    }
    return out;
}

}  // namespace wft
