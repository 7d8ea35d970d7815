#ifndef WFT_FOURIER_HPP
#define WFT_FOURIER_HPP

#include <string>
#include <vector>

#include "wft/engine.hpp"
#include "wft/grid.hpp"

namespace wft {

// Frequency grid matched to a time grid: half-width pi/dx (the finest
// oscillation the samples can represent), same point count, centered at zero.
UniformGrid default_frequency_grid(const UniformGrid& time_grid);

// Continuous-convention transform pair evaluated by trapezoid quadrature on
// the sample grid:
//   forward:  F(w) = integral f(x) e^{-i x w} dx
//   inverse:  f(x) = (1/2pi) integral F(w) e^{+i x w} dw
SampledSignal forward_ft(const SampledSignal& f, const UniformGrid& freq_grid,
                         Engine engine = Engine::fast);
SampledSignal forward_ft(const SampledSignal& f, Engine engine = Engine::fast);
SampledSignal inverse_ft(const SampledSignal& spectrum, const UniformGrid& time_grid,
                         Engine engine = Engine::fast);

// Single-point evaluations at arbitrary frequency / position.
cplx forward_ft_point(const SampledSignal& f, double omega);
cplx inverse_ft_point(const SampledSignal& spectrum, double x);

// Modulation (M_w f)(x) = e^{-i x w} f(x).
SampledSignal modulate(const SampledSignal& f, double omega);

// Band restriction (S_A f)(x) = (1/2pi) integral_{-A}^{A} F(u) e^{i x u} du,
// F being the trapezoid transform of the samples.  The reference engine runs
// the equivalent time-domain convolution with sin(A u)/(pi u); the fast
// engine synthesizes the band integral from Gauss-Legendre panels.  A must be
// positive; values beyond the grid's representable band pi/dx are clamped,
// with a note appended to *warnings when provided.
SampledSignal band_restrict(const SampledSignal& f, double band_limit,
                            Engine engine = Engine::fast,
                            std::vector<std::string>* warnings = nullptr);

}  // namespace wft

#endif
