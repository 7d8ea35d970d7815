#ifndef WFT_SRC_PHASE_SUM_HPP
#define WFT_SRC_PHASE_SUM_HPP

// Internal trapezoid phase-sum helpers shared by the transform translation
// units. Not part of the installed interface.

#include <algorithm>
#include <cmath>
#include <complex>

#include "wft/grid.hpp"

namespace wft::detail {

// Phase recurrences drift by ~1 ulp per multiply; restarting the phase from
// std::polar every so often keeps the whole sum near machine accuracy.
inline constexpr int kResyncStride = 256;

// Trapezoid sum  dx * sum_k' s[k] exp(i sgn x_k freq)  over the sample grid
// (primed sum: endpoint samples weighted 1/2), via blocked phase recurrence.
inline cplx phase_sum(const SampledSignal& s, double freq, double sgn) {
    const UniformGrid& g = s.grid;
    const int n = g.n;
    const double dx = g.dx();
    const cplx step = std::polar(1.0, sgn * dx * freq);
    cplx acc = 0.0;
    for (int k0 = 0; k0 < n; k0 += kResyncStride) {
        cplx ph = std::polar(1.0, sgn * g.point(k0) * freq);
        const int k1 = std::min(n, k0 + kResyncStride);
        for (int k = k0; k < k1; ++k) {
            acc += s.values[k] * ph;
            ph *= step;
        }
    }
    acc -= 0.5 * (s.values[0] * std::polar(1.0, sgn * g.point(0) * freq) +
                  s.values[n - 1] * std::polar(1.0, sgn * g.point(n - 1) * freq));
    return acc * dx;
}

// Same sum with one std::polar per sample; the plain transcription.
inline cplx phase_sum_direct(const SampledSignal& s, double freq, double sgn) {
    const UniformGrid& g = s.grid;
    const int n = g.n;
    cplx acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
        acc += w * s.values[k] * std::polar(1.0, sgn * g.point(k) * freq);
    }
    return acc * g.dx();
}

}  // namespace wft::detail

#endif
