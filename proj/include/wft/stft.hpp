#ifndef WFT_STFT_HPP
#define WFT_STFT_HPP

#include <vector>

#include "wft/engine.hpp"
#include "wft/grid.hpp"
#include "wft/window.hpp"

namespace wft {

/// Windowed transform samples on a time x frequency lattice, stored row-major
/// with the time index outermost.
struct StftMatrix {
    UniformGrid time_grid;
    UniformGrid freq_grid;
    std::vector<cplx> values;

    int rows() const { return time_grid.n; }
    int cols() const { return freq_grid.n; }
    cplx& at(int ti, int fj) { return values[static_cast<size_t>(ti) * freq_grid.n + fj]; }
    const cplx& at(int ti, int fj) const {
        return values[static_cast<size_t>(ti) * freq_grid.n + fj];
    }
    bool all_finite() const;
};

/// One windowed-transform sample
///   (F_g f)(t, w) = integral f(x) conj(g(x - t)) e^{-i x w} dx,
/// evaluated by trapezoid quadrature on f's grid, restricted to the window
/// support when it is compact.
cplx stft_point(const SampledSignal& f, const Window& g, double t, double omega);

/// Windowed transform on the full lattice. The reference engine evaluates
/// each sample directly; the fast engine parallelizes over time rows and uses
/// blocked phase recurrences along frequency.
StftMatrix forward_stft(const SampledSignal& f, const Window& g, const UniformGrid& time_grid,
                        const UniformGrid& freq_grid, Engine engine = Engine::fast);

/// Maximum absolute deviation, over the given evaluation points, of the
/// identity relating the windowed transform of f under g to the windowed
/// transform of the spectrum of f under the spectrum of g:
///   (F_g f)(x, w) = (1/2pi) e^{-i x w} (F_ghat fhat)(w, -x).
double check_fourier_domain_identity(const SampledSignal& f, const Window& g,
                                     const std::vector<double>& xs,
                                     const std::vector<double>& omegas,
                                     Engine engine = Engine::fast);

}  // namespace wft

#endif
