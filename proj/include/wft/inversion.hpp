#ifndef WFT_INVERSION_HPP
#define WFT_INVERSION_HPP

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "wft/engine.hpp"
#include "wft/fourier.hpp"
#include "wft/grid.hpp"
#include "wft/stft.hpp"
#include "wft/window.hpp"

namespace wft {

/// One-sided spectral truncation limits [-a1, a2] (both strictly positive).
struct TruncationPair {
    double a1 = 1.0;
    double a2 = 1.0;

    static TruncationPair symmetric(double a) { return {a, a}; }
    double span() const { return a1 + a2; }
};

/// Thrown when an inversion is requested for a window anchored where it
/// (almost) vanishes, making the normalization 1/(2 pi conj(g(x0))) ill-posed.
class DegenerateAnchorError : public std::runtime_error {
  public:
    explicit DegenerateAnchorError(const std::string& what) : std::runtime_error(what) {}
};

/// E(u) = integral_{-a1}^{a2} e^{-i u w} dw, the band phase factor of the
/// inversion kernel. Closed form away from u = 0, series near it (switching
/// on the scale-free product |u| (a1 + a2)).
cplx band_phase_integral(double u, double a1, double a2);

/// dE/du, same branch structure.
cplx band_phase_integral_derivative(double u, double a1, double a2);

/// Inversion kernel K(x, y) = conj(g(y - x + x0)) E(y - x). For |y - x| below
/// 1e-6 the band factor is replaced by its second-order expansion
///   (a1 + a2) - u^2 (a1^3 + a2^3)/6 - i u (a2^2 - a1^2)/2,   u = y - x.
cplx kernel_eval(const Window& g, double x0, const TruncationPair& tr, double x, double y);

/// The spectral multiplier of the truncated inversion,
///   h(xi) = integral_{xi - a2}^{xi + a1} conj(ghat(w)) e^{-i x0 w} dw.
/// Uses the closed erf form for gaussian windows anchored at x0 = 0 and
/// Gauss-Legendre quadrature otherwise.
cplx multiplier_eval(const Window& g, const TruncationPair& tr, double xi);

/// h sampled on a frequency grid, with bookkeeping the diagnostics use.
/// `provenance` records how the samples were produced: "closed-form",
/// "quadrature", or "cumulative-table" (incremental integration along the
/// grid, chosen when pointwise quadrature would be too expensive).
struct MultiplierProfile {
    TruncationPair truncation;
    UniformGrid grid;
    std::vector<cplx> samples;
    double total_variation_estimate = 0.0;
    std::string provenance;
};

MultiplierProfile multiplier_profile(const Window& g, const TruncationPair& tr,
                                     const UniformGrid& freq_grid);

/// Diagnostics attached to every reconstruction.
struct InversionDiagnostics {
    std::vector<std::string> warnings;
    std::string method;
    double runtime_ms = 0.0;
    /// Estimate of the achievable sup-norm deviation, where the pathway can
    /// compute one cheaply; NaN otherwise.
    double tail_estimate = std::numeric_limits<double>::quiet_NaN();
};

struct Reconstruction {
    SampledSignal signal;
    InversionDiagnostics diagnostics;
};

/// Truncated inversion by direct kernel quadrature:
///   (T f)(x) = integral f(y) K(x, y) dy
/// on f's grid. Smooth windows use plain trapezoid sums; compactly supported
/// windows are integrated with composite Gauss-Legendre panels over each
/// smooth piece between window kinks, interpolating f cubically.
Reconstruction invert_kernel(const SampledSignal& f, const Window& g, const TruncationPair& tr,
                             Engine engine = Engine::fast);

/// Truncated inversion through the spectral multiplier:
///   T f = inverse transform of  h . fhat.
Reconstruction invert_multiplier(const SampledSignal& f, const Window& g,
                                 const TruncationPair& tr, Engine engine = Engine::fast);

/// Frequency nodes for the modulation pathway: the points of `freq_grid`
/// holding all but a 1e-12 relative fraction of the window's spectral mass.
/// Appends a warning when even the full grid cannot reach a 1e-10 fraction
/// (the case for slowly decaying window spectra).
UniformGrid modulation_grid_for_window(const UniformGrid& freq_grid, const Window& g,
                                       std::vector<std::string>* warnings = nullptr);

/// Frequency nodes sized from the signal content instead: the grid points
/// with |w| <= R + a, where R holds all but `mass_eps` of the cumulative
/// |fhat| grid mass. The omitted contribution to the modulation integral is
/// then at most ||ghat||_1 mass_eps ||fhat||_1 / (2 pi).
UniformGrid modulation_grid_for_signal(const SampledSignal& fhat, double a,
                                       double mass_eps = 1e-12);

/// Truncated inversion assembled from modulated band restrictions
/// (symmetric truncation only):
///   (T f)(x) = sum_w  w_quad  conj(ghat(w)) e^{-i x0 w} (M_{-w} S_a M_w f)(x),
/// where each slice (1/2pi) integral_{w-a}^{w+a} fhat(u) e^{i x u} du is
/// synthesized from Gauss-Legendre panels. Contributions are accumulated in
/// blocks of 32 nodes combined pairwise in a fixed order, so results do not
/// depend on the thread count.
Reconstruction invert_modulation(const SampledSignal& f, const Window& g, double a,
                                 const UniformGrid& omega_grid, Engine engine = Engine::fast);

/// Classical two-variable reconstruction from windowed-transform samples:
///   f(x) ~ (1/(2 pi ||g||_2^2)) double-integral S(t, w) g(x - t) e^{i x w} dt dw
/// by trapezoid quadrature over the sample lattice.
Reconstruction invert_double_integral(const StftMatrix& s, const Window& g,
                                      const UniformGrid& x_grid, Engine engine = Engine::fast);

/// Full-band single-integral reconstruction normalized to recover f itself:
///   f_rec = (T_{band} f) / (2 pi conj(g(x0)))
/// with both truncation limits at the grid band pi/dx. Throws
/// DegenerateAnchorError when |g(x0)| falls below the anchor floor. The
/// attached tail estimate integrates the multiplier's deviation from the
/// ideal constant against |fhat| on the grid.
Reconstruction filter_bank_reconstruct(const SampledSignal& f, const Window& g,
                                       Engine engine = Engine::fast);

/// Upper bound on sup_x |(T f)(x) - 2 pi conj(g(x0)) f(x)| from the grid
/// spectrum: (1/2pi) integral |ghat(w)| [M(-inf, w - a1) + M(w + a2, inf)] dw,
/// where M measures cumulative |fhat| grid mass.
double truncation_sup_bound(const SampledSignal& fhat, const Window& g, const TruncationPair& tr);

}  // namespace wft

#endif
