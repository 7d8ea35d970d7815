#include "wft/stft.hpp"

#include <cmath>
#include <complex>

#include "phase_sum.hpp"
#include "wft/fourier.hpp"

namespace wft {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

// f multiplied by conj(g(. - t)), restricted to the window support (when
// compact) intersected with f's domain. Returns an empty signal when the
// window does not overlap the domain.
SampledSignal windowed_slice(const SampledSignal& f, const Window& g, double t) {
    const UniformGrid& grid = f.grid;
    int k0 = 0, k1 = grid.n - 1;
    if (g.support_half_width()) {
        const double s = *g.support_half_width();
        // Keep one sample on each side so the trapezoid sees the support edge.
        k0 = std::max(0, static_cast<int>(std::floor((t - s - grid.left()) / grid.dx())));
        k1 = std::min(grid.n - 1, static_cast<int>(std::ceil((t + s - grid.left()) / grid.dx())));
        if (k1 - k0 < 1) return SampledSignal{};
    }
    const double left = grid.point(k0);
    const double right = grid.point(k1);
    UniformGrid sub{0.5 * (left + right), 0.5 * (right - left), k1 - k0 + 1};
    SampledSignal out = SampledSignal::zero(sub);
    for (int k = k0; k <= k1; ++k)
        out.values[k - k0] = f.values[k] * std::conj(g.g(grid.point(k) - t));
    return out;
}

cplx stft_eval(const SampledSignal& f, const Window& g, double t, double omega, bool direct) {
    const SampledSignal w = windowed_slice(f, g, t);
    if (w.grid.n == 0) return 0.0;
    return direct ? detail::phase_sum_direct(w, omega, -1.0) : detail::phase_sum(w, omega, -1.0);
}

}  // namespace

bool StftMatrix::all_finite() const {
    for (const cplx& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

cplx stft_point(const SampledSignal& f, const Window& g, double t, double omega) {
    return stft_eval(f, g, t, omega, false);
}

StftMatrix forward_stft(const SampledSignal& f, const Window& g, const UniformGrid& time_grid,
                        const UniformGrid& freq_grid, Engine engine) {
    StftMatrix m;
    m.time_grid = time_grid;
    m.freq_grid = freq_grid;
    m.values.assign(static_cast<size_t>(time_grid.n) * freq_grid.n, cplx(0.0, 0.0));
    if (engine == Engine::reference) {
        for (int i = 0; i < time_grid.n; ++i) {
            const SampledSignal w = windowed_slice(f, g, time_grid.point(i));
            if (w.grid.n == 0) continue;
            for (int j = 0; j < freq_grid.n; ++j)
                m.at(i, j) = detail::phase_sum_direct(w, freq_grid.point(j), -1.0);
        }
        return m;
    }
#pragma omp parallel for schedule(static)
    for (int i = 0; i < time_grid.n; ++i) {
        const SampledSignal w = windowed_slice(f, g, time_grid.point(i));
        if (w.grid.n == 0) continue;
        for (int j = 0; j < freq_grid.n; ++j)
            m.at(i, j) = detail::phase_sum(w, freq_grid.point(j), -1.0);
    }
    return m;
}

double check_fourier_domain_identity(const SampledSignal& f, const Window& g,
                                     const std::vector<double>& xs,
                                     const std::vector<double>& omegas, Engine engine) {
    const SampledSignal fhat = forward_ft(f, engine);
    const UniformGrid& fg = fhat.grid;
    double worst = 0.0;
    for (double x : xs) {
        for (double w : omegas) {
            const cplx lhs = stft_point(f, g, x, w);
            // (F_ghat fhat)(w, -x) by trapezoid over the spectral grid.
            cplx acc = 0.0;
            for (int j = 0; j < fg.n; ++j) {
                const double xi = fg.point(j);
                const double wt = (j == 0 || j == fg.n - 1) ? 0.5 : 1.0;
                acc += wt * fhat.values[j] * std::conj(g.g_hat(xi - w)) *
                       std::polar(1.0, xi * x);
            }
            acc *= fg.dx();
            const cplx rhs = acc / kTwoPi * std::polar(1.0, -x * w);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

}  // namespace wft
