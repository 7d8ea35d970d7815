#include "wft/inversion.hpp"

#include <algorithm>
#include <array>
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

double pow3(double a) { return a * a * a; }
double pow4(double a) { return (a * a) * (a * a); }
double pow5(double a) { return pow4(a) * a; }

double grid_band(const UniformGrid& g) { return kPi / g.dx(); }

void validate_truncation(const TruncationPair& tr) {
    if (!(tr.a1 > 0.0) || !(tr.a2 > 0.0) || !std::isfinite(tr.a1) || !std::isfinite(tr.a2))
        throw std::invalid_argument("truncation limits must be positive and finite");
}

TruncationPair clamp_truncation(const TruncationPair& tr, const UniformGrid& time_grid,
                                std::vector<std::string>* warnings) {
    validate_truncation(tr);
    const double band = grid_band(time_grid);
    TruncationPair out = tr;
    auto clamp_side = [&](double& v, const char* name) {
        if (v > band * (1.0 + 1e-12)) {
            if (warnings) {
                char buf[176];
                std::snprintf(buf, sizeof buf,
                              "truncation %s = %.6g exceeds the grid band %.6g; clamped to the grid band",
                              name, v, band);
                warnings->push_back(buf);
            }
            v = band;
        }
    };
    clamp_side(out.a1, "a1");
    clamp_side(out.a2, "a2");
    return out;
}

/// Panel width keeping both the window spectrum and the anchor phase slowly
/// varying within one Gauss-Legendre panel.
double multiplier_panel_width(const Window& g) {
    double w = 0.5 * kPi * g.spectral_scale();
    const double x0 = std::fabs(g.anchor());
    if (x0 > 1e-12) w = std::min(w, 0.5 * kPi / x0);
    return w;
}

cplx multiplier_segment(const Window& g, double lo, double hi) {
    if (!(hi > lo)) return hi == lo ? cplx{0.0, 0.0} : -multiplier_segment(g, hi, lo);
    const double x0 = g.anchor();
    return gl16_composite(lo, hi, multiplier_panel_width(g), [&](double w) {
        return std::conj(g.g_hat(w)) * std::polar(1.0, -x0 * w);
    });
}

bool has_closed_form_multiplier(const Window& g) {
    return g.kind() == WindowKind::gaussian && g.anchor() == 0.0;
}

cplx multiplier_closed_form(const Window& g, const TruncationPair& tr, double xi) {
    const double s = g.sigma() / std::sqrt(2.0);
    return {kPi * (std::erf(s * (xi + tr.a1)) - std::erf(s * (xi - tr.a2))), 0.0};
}

}  // namespace

cplx band_phase_integral(double u, double a1, double a2) {
    if (std::fabs(u) * (a1 + a2) < 1e-3) {
        const double u2 = u * u;
        const double re = (a1 + a2) - u2 * (pow3(a1) + pow3(a2)) / 6.0 +
                          u2 * u2 * (pow5(a1) + pow5(a2)) / 120.0;
        const double im = -u * (a2 * a2 - a1 * a1) / 2.0 + u * u2 * (pow4(a2) - pow4(a1)) / 24.0;
        return {re, im};
    }
    const double re = (std::sin(a1 * u) + std::sin(a2 * u)) / u;
    const double im = -2.0 * std::sin(0.5 * (a2 - a1) * u) * std::sin(0.5 * (a2 + a1) * u) / u;
    return {re, im};
}

cplx band_phase_integral_derivative(double u, double a1, double a2) {
    if (std::fabs(u) * (a1 + a2) < 1e-3) {
        const double u2 = u * u;
        const double re = -u * (pow3(a1) + pow3(a2)) / 3.0 + u * u2 * (pow5(a1) + pow5(a2)) / 30.0;
        const double im = -(a2 * a2 - a1 * a1) / 2.0 + u2 * (pow4(a2) - pow4(a1)) / 8.0;
        return {re, im};
    }
    const double s1 = std::sin(a1 * u), s2 = std::sin(a2 * u);
    const double cdiff = -2.0 * std::sin(0.5 * (a2 - a1) * u) * std::sin(0.5 * (a2 + a1) * u);
    const double re = (a1 * std::cos(a1 * u) + a2 * std::cos(a2 * u)) / u - (s1 + s2) / (u * u);
    const double im = (a1 * s1 - a2 * s2) / u - cdiff / (u * u);
    return {re, im};
}

cplx kernel_eval(const Window& g, double x0, const TruncationPair& tr, double x, double y) {
    const double u = y - x;
    cplx band;
    if (std::fabs(u) < 1e-6) {
        band = {(tr.a1 + tr.a2) - u * u * (pow3(tr.a1) + pow3(tr.a2)) / 6.0,
                -u * (tr.a2 * tr.a2 - tr.a1 * tr.a1) / 2.0};
    } else {
        band = band_phase_integral(u, tr.a1, tr.a2);
    }
    return std::conj(g.g(u + x0)) * band;
}

cplx multiplier_eval(const Window& g, const TruncationPair& tr, double xi) {
    validate_truncation(tr);
    if (has_closed_form_multiplier(g)) return multiplier_closed_form(g, tr, xi);
    return multiplier_segment(g, xi - tr.a2, xi + tr.a1);
}

MultiplierProfile multiplier_profile(const Window& g, const TruncationPair& tr,
                                     const UniformGrid& freq_grid) {
    validate_truncation(tr);
    MultiplierProfile prof;
    prof.truncation = tr;
    prof.grid = freq_grid;
    const int n = freq_grid.n;
    prof.samples.resize(n);

    if (has_closed_form_multiplier(g)) {
        prof.provenance = "closed-form";
        for (int j = 0; j < n; ++j)
            prof.samples[j] = multiplier_closed_form(g, tr, freq_grid.point(j));
    } else {
        const double pw = multiplier_panel_width(g);
        const double span = tr.span();
        const double per_point_panels = span / pw + 1.0;
        if (static_cast<double>(n) * per_point_panels <= 1.25e5) {
            prof.provenance = "quadrature";
            for (int j = 0; j < n; ++j) {
                const double xi = freq_grid.point(j);
                prof.samples[j] = multiplier_segment(g, xi - tr.a2, xi + tr.a1);
            }
        } else {
            // Incremental table: each step adds the sliver entering the moving
            // integration window and removes the sliver leaving it.
            prof.provenance = "cumulative-table";
            const double x0 = freq_grid.point(0);
            prof.samples[0] = multiplier_segment(g, x0 - tr.a2, x0 + tr.a1);
            for (int j = 1; j < n; ++j) {
                const double lo = freq_grid.point(j - 1);
                const double hi = freq_grid.point(j);
                prof.samples[j] = prof.samples[j - 1] +
                                  multiplier_segment(g, lo + tr.a1, hi + tr.a1) -
                                  multiplier_segment(g, lo - tr.a2, hi - tr.a2);
            }
        }
    }

    double tv = 0.0;
    for (int j = 1; j < n; ++j) tv += std::abs(prof.samples[j] - prof.samples[j - 1]);
    prof.total_variation_estimate = tv;
    return prof;
}

Reconstruction invert_kernel(const SampledSignal& f, const Window& g, const TruncationPair& tr,
                             Engine engine) {
    StopwatchMs clock;
    Reconstruction rec;
    const TruncationPair trc = clamp_truncation(tr, f.grid, &rec.diagnostics.warnings);
    const UniformGrid& grid = f.grid;
    const int n = grid.n;
    const double dx = grid.dx();
    const double x0 = g.anchor();
    rec.signal = SampledSignal::zero(grid);

    const bool compact = g.support_half_width().has_value();
    if (!compact) {
        // Smooth window: the integrand decays with f and g, so the plain
        // trapezoid sum over the sample grid is already spectrally accurate.
        auto row = [&](int m) {
            const double x = grid.point(m);
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k) {
                const double u = grid.point(k) - x;
                const cplx term =
                    f.values[k] * std::conj(g.g(u + x0)) * band_phase_integral(u, trc.a1, trc.a2);
                acc += (k == 0 || k == n - 1) ? 0.5 * term : term;
            }
            rec.signal.values[m] = acc * dx;
        };
        if (engine == Engine::reference) {
            for (int m = 0; m < n; ++m) row(m);
        } else {
#pragma omp parallel for schedule(static)
            for (int m = 0; m < n; ++m) row(m);
        }
        rec.diagnostics.method = "kernel(trapezoid)";
    } else {
        // Compact window: integrate each smooth piece between window kinks
        // with Gauss-Legendre panels, interpolating f with a quintic stencil
        // (cubic is the accuracy bottleneck on oscillatory signals). Panel
        // widths resolve both the sample spacing and the band phase
        // oscillation.
        const double support = *g.support_half_width();
        const std::vector<double>& kinks = g.kink_positions();
        const double pw = std::min(8.0 * dx, 4.0 / std::max(1.0, trc.span()));
        const std::array<double, 16> gt = gl16_full_nodes();
        const std::array<double, 16> gw = gl16_full_weights();

        auto row = [&](int m) {
            const double x = grid.point(m);
            const double lo = std::max(grid.left(), x - x0 - support);
            const double hi = std::min(grid.right(), x - x0 + support);
            if (!(hi > lo)) {
                rec.signal.values[m] = 0.0;
                return;
            }
            double cuts[8];
            int ncuts = 0;
            cuts[ncuts++] = lo;
            for (double c : kinks) {
                const double y = x - x0 + c;
                if (y > lo && y < hi) cuts[ncuts++] = y;
            }
            cuts[ncuts++] = hi;
            std::sort(cuts, cuts + ncuts);

            cplx acc = 0.0;
            for (int s = 0; s + 1 < ncuts; ++s) {
                const double pa = cuts[s], pb = cuts[s + 1];
                if (!(pb > pa)) continue;
                const int panels = std::max(1, static_cast<int>((pb - pa) / pw) + 1);
                const double h = (pb - pa) / panels;
                for (int p = 0; p < panels; ++p) {
                    const double mid = pa + (p + 0.5) * h;
                    cplx psum = 0.0;
                    for (int i = 0; i < 16; ++i) {
                        const double y = mid + 0.5 * h * gt[i];
                        const double u = y - x;
                        psum += gw[i] * interpolate_quintic(f, y) * std::conj(g.g(u + x0)) *
                                band_phase_integral(u, trc.a1, trc.a2);
                    }
                    acc += psum * (0.5 * h);
                }
            }
            rec.signal.values[m] = acc;
        };
        if (engine == Engine::reference) {
            for (int m = 0; m < n; ++m) row(m);
        } else {
#pragma omp parallel for schedule(static)
            for (int m = 0; m < n; ++m) row(m);
        }
        rec.diagnostics.method = "kernel(panel)";
    }

    rec.diagnostics.runtime_ms = clock.elapsed();
    return rec;
}

Reconstruction invert_multiplier(const SampledSignal& f, const Window& g,
                                 const TruncationPair& tr, Engine engine) {
    StopwatchMs clock;
    Reconstruction rec;
    const TruncationPair trc = clamp_truncation(tr, f.grid, &rec.diagnostics.warnings);
    const UniformGrid freq = default_frequency_grid(f.grid);
    const SampledSignal fhat = forward_ft(f, freq, engine);
    const MultiplierProfile prof = multiplier_profile(g, trc, freq);

    SampledSignal prod = fhat;
    for (int j = 0; j < freq.n; ++j) prod.values[j] *= prof.samples[j];
    rec.signal = inverse_ft(prod, f.grid, engine);
    rec.diagnostics.method = "multiplier(" + prof.provenance + ")";
    rec.diagnostics.tail_estimate = truncation_sup_bound(fhat, g, trc);
    rec.diagnostics.runtime_ms = clock.elapsed();
    return rec;
}

UniformGrid modulation_grid_for_window(const UniformGrid& freq_grid, const Window& g,
                                       std::vector<std::string>* warnings) {
    const double r_target = g.mass_radius(1e-12);
    const double r_floor = g.mass_radius(1e-10);
    const double cover = std::max(std::fabs(freq_grid.left()), std::fabs(freq_grid.right()));
    if (cover < r_floor && warnings) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "frequency grid reaches |w| = %.6g but the window spectrum keeps mass out to "
                      "|w| = %.6g; modulation nodes truncated at the grid edge",
                      cover, r_floor);
        warnings->push_back(buf);
    }

    const double dw = freq_grid.dx();
    const double lo = std::max(freq_grid.left(), -r_target);
    const double hi = std::min(freq_grid.right(), r_target);
    int j0 = static_cast<int>(std::ceil((lo - freq_grid.left()) / dw - 1e-9));
    int j1 = static_cast<int>(std::floor((hi - freq_grid.left()) / dw + 1e-9));
    j0 = std::clamp(j0, 0, freq_grid.n - 1);
    j1 = std::clamp(j1, 0, freq_grid.n - 1);
    while (j1 - j0 < 2 && (j0 > 0 || j1 < freq_grid.n - 1)) {
        if (j0 > 0) --j0;
        if (j1 < freq_grid.n - 1) ++j1;
    }
    if (j1 - j0 < 1) throw std::invalid_argument("frequency grid too small for modulation nodes");
    const double p0 = freq_grid.point(j0), p1 = freq_grid.point(j1);
    return UniformGrid::offset(0.5 * (p0 + p1), 0.5 * (p1 - p0), j1 - j0 + 1);
}

UniformGrid modulation_grid_for_signal(const SampledSignal& fhat, double a, double mass_eps) {
    if (!(a > 0.0)) throw std::invalid_argument("truncation limit must be positive");
    const UniformGrid& grid = fhat.grid;
    const int n = grid.n;
    const double dw = grid.dx();

    std::vector<double> cum(n, 0.0);
    for (int j = 1; j < n; ++j)
        cum[j] = cum[j - 1] + 0.5 * (std::abs(fhat.values[j - 1]) + std::abs(fhat.values[j])) * dw;
    const double total = cum[n - 1];
    const double target = 0.5 * mass_eps * total;

    int jl = 0;
    while (jl + 1 < n && cum[jl + 1] <= target) ++jl;
    int jr = n - 1;
    while (jr > 0 && total - cum[jr - 1] <= target) --jr;
    const double r_signal = std::max(std::fabs(grid.point(jl)), std::fabs(grid.point(jr)));
    const double w = r_signal + a;

    const double lo = std::max(grid.left(), -w);
    const double hi = std::min(grid.right(), w);
    int j0 = static_cast<int>(std::ceil((lo - grid.left()) / dw - 1e-9));
    int j1 = static_cast<int>(std::floor((hi - grid.left()) / dw + 1e-9));
    j0 = std::clamp(j0, 0, n - 1);
    j1 = std::clamp(j1, 0, n - 1);
    while (j1 - j0 < 2 && (j0 > 0 || j1 < n - 1)) {
        if (j0 > 0) --j0;
        if (j1 < n - 1) ++j1;
    }
    const double p0 = grid.point(j0), p1 = grid.point(j1);
    return UniformGrid::offset(0.5 * (p0 + p1), 0.5 * (p1 - p0), j1 - j0 + 1);
}

Reconstruction invert_modulation(const SampledSignal& f, const Window& g, double a,
                                 const UniformGrid& omega_grid, Engine engine) {
    StopwatchMs clock;
    Reconstruction rec;
    if (!(a > 0.0) || !std::isfinite(a))
        throw std::invalid_argument("truncation limit must be positive and finite");
    const TruncationPair trc =
        clamp_truncation(TruncationPair::symmetric(a), f.grid, &rec.diagnostics.warnings);
    const double ac = trc.a1;

    const UniformGrid& grid = f.grid;
    const int n = grid.n;
    const int nw = omega_grid.n;
    const double dw = omega_grid.dx();
    const double x0 = g.anchor();

    // Gauss-Legendre node offsets for one band slice [-a, a] around a node.
    const double x_extent = std::max(std::fabs(grid.left()), std::fabs(grid.right()));
    const double max_panel = 6.0 / std::max(1.0, x_extent);
    const int panels = std::max(1, static_cast<int>(2.0 * ac / max_panel) + 1);
    const double h = 2.0 * ac / panels;
    const std::array<double, 16> gt = gl16_full_nodes();
    const std::array<double, 16> gw = gl16_full_weights();
    std::vector<double> rel(static_cast<size_t>(panels) * 16);
    for (int p = 0; p < panels; ++p) {
        const double mid = -ac + (p + 0.5) * h;
        for (int i = 0; i < 16; ++i) rel[p * 16 + i] = mid + 0.5 * h * gt[i];
    }

    // Frequency nodes accumulate into blocks of 32 combined pairwise in a
    // fixed order, so the result is independent of the thread count.
    constexpr int kBlock = 32;
    const int nblocks = (nw + kBlock - 1) / kBlock;
    std::vector<std::vector<cplx>> block_acc(nblocks, std::vector<cplx>(n, cplx{0.0, 0.0}));

    std::vector<cplx> hat(rel.size());
    const int nq = static_cast<int>(rel.size());
    for (int j = 0; j < nw; ++j) {
        const double w = omega_grid.point(j);
        if (engine == Engine::reference) {
            for (int q = 0; q < nq; ++q) hat[q] = phase_sum_direct(f, w + rel[q], -1.0);
        } else {
#pragma omp parallel for schedule(static)
            for (int q = 0; q < nq; ++q) hat[q] = phase_sum(f, w + rel[q], -1.0);
        }

        const double wt = (j == 0 || j == nw - 1) ? 0.5 : 1.0;
        const cplx coeff = wt * dw * std::conj(g.g_hat(w)) * std::polar(1.0, -x0 * w);
        std::vector<cplx>& acc = block_acc[j / kBlock];

        if (engine == Engine::reference) {
            for (int m = 0; m < n; ++m) {
                const double x = grid.point(m);
                cplx total = 0.0;
                for (int q = 0; q < nq; ++q)
                    total += gw[q % 16] * hat[q] * std::polar(1.0, x * (w + rel[q]));
                acc[m] += coeff * total * (0.5 * h) / kTwoPi;
            }
        } else {
#pragma omp parallel for schedule(static)
            for (int m = 0; m < n; ++m) {
                const double x = grid.point(m);
                const cplx step = std::polar(1.0, x * h);
                cplx total = 0.0;
                for (int i = 0; i < 16; ++i) {
                    cplx node_acc = 0.0;
                    cplx ph = 0.0;
                    for (int p = 0; p < panels; ++p) {
                        if (p % kResyncStride == 0) ph = std::polar(1.0, x * (w + rel[p * 16 + i]));
                        node_acc += hat[p * 16 + i] * ph;
                        ph *= step;
                    }
                    total += gw[i] * node_acc;
                }
                acc[m] += coeff * total * (0.5 * h) / kTwoPi;
            }
        }
    }

    for (int stride = 1; stride < nblocks; stride *= 2)
        for (int b = 0; b + stride < nblocks; b += 2 * stride)
            for (int m = 0; m < n; ++m) block_acc[b][m] += block_acc[b + stride][m];

    rec.signal = SampledSignal{grid, std::move(block_acc[0])};
    rec.diagnostics.method = "modulation";
    rec.diagnostics.runtime_ms = clock.elapsed();
    return rec;
}

Reconstruction invert_double_integral(const StftMatrix& s, const Window& g,
                                      const UniformGrid& x_grid, Engine engine) {
    StopwatchMs clock;
    Reconstruction rec;
    const int nt = s.time_grid.n;
    const int nf = s.freq_grid.n;
    const int n = x_grid.n;
    const double dt = s.time_grid.dx();
    const double dw = s.freq_grid.dx();
    const double norm = 1.0 / (kTwoPi * g.l2sq_g());
    rec.signal = SampledSignal::zero(x_grid);

    auto row = [&](int m) {
        const double x = x_grid.point(m);
        const cplx step = std::polar(1.0, x * dw);
        cplx acc = 0.0;
        for (int i = 0; i < nt; ++i) {
            cplx inner = 0.0;
            if (engine == Engine::reference) {
                for (int j = 0; j < nf; ++j) {
                    const cplx term = s.at(i, j) * std::polar(1.0, x * s.freq_grid.point(j));
                    inner += (j == 0 || j == nf - 1) ? 0.5 * term : term;
                }
            } else {
                cplx ph = 0.0;
                for (int j = 0; j < nf; ++j) {
                    if (j % kResyncStride == 0) ph = std::polar(1.0, x * s.freq_grid.point(j));
                    const cplx term = s.at(i, j) * ph;
                    inner += (j == 0 || j == nf - 1) ? 0.5 * term : term;
                    ph *= step;
                }
            }
            const cplx term = g.g(x - s.time_grid.point(i)) * inner;
            acc += (i == 0 || i == nt - 1) ? 0.5 * term : term;
        }
        rec.signal.values[m] = acc * dt * dw * norm;
    };

    if (engine == Engine::reference) {
        for (int m = 0; m < n; ++m) row(m);
    } else {
#pragma omp parallel for schedule(static)
        for (int m = 0; m < n; ++m) row(m);
    }

    rec.diagnostics.method = "double-integral";
    rec.diagnostics.runtime_ms = clock.elapsed();
    return rec;
}

Reconstruction filter_bank_reconstruct(const SampledSignal& f, const Window& g, Engine engine) {
    StopwatchMs clock;
    if (!g.invertible_anchor()) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "window vanishes at its anchor (|g(x0)| = %.3g < %.3g); the single-integral "
                      "normalization is ill-posed",
                      std::abs(g.g_at_anchor()), kAnchorFloor);
        throw DegenerateAnchorError(buf);
    }

    Reconstruction rec;
    const double band = grid_band(f.grid);
    const UniformGrid freq = default_frequency_grid(f.grid);
    const SampledSignal fhat = forward_ft(f, freq, engine);
    const MultiplierProfile prof = multiplier_profile(g, TruncationPair::symmetric(band), freq);
    const cplx c = kTwoPi * std::conj(g.g_at_anchor());

    SampledSignal prod = fhat;
    double deficit = 0.0;
    const double dw = freq.dx();
    for (int j = 0; j < freq.n; ++j) {
        prod.values[j] *= prof.samples[j] / c;
        const double wt = (j == 0 || j == freq.n - 1) ? 0.5 : 1.0;
        deficit += wt * dw * std::abs(prof.samples[j] - c) * std::abs(fhat.values[j]);
    }
    rec.signal = inverse_ft(prod, f.grid, engine);
    rec.diagnostics.method = "filter-bank(" + prof.provenance + ")";
    rec.diagnostics.tail_estimate = deficit / (kTwoPi * std::abs(c));
    rec.diagnostics.runtime_ms = clock.elapsed();
    return rec;
}

double truncation_sup_bound(const SampledSignal& fhat, const Window& g, const TruncationPair& tr) {
    validate_truncation(tr);
    const UniformGrid& grid = fhat.grid;
    const int n = grid.n;
    const double dw = grid.dx();

    std::vector<double> cum(n, 0.0);
    for (int j = 1; j < n; ++j)
        cum[j] = cum[j - 1] + 0.5 * (std::abs(fhat.values[j - 1]) + std::abs(fhat.values[j])) * dw;
    const double total = cum[n - 1];

    // Partial-cell evaluation consistent with the trapezoid cumulative: the
    // sample modulus is treated as linear within a cell.
    auto mass_below = [&](double xi) {
        if (xi <= grid.left()) return 0.0;
        if (xi >= grid.right()) return total;
        const double pos = (xi - grid.left()) / dw;
        int k = static_cast<int>(pos);
        k = std::min(k, n - 2);
        const double d = xi - grid.point(k);
        const double vk = std::abs(fhat.values[k]);
        const double vk1 = std::abs(fhat.values[k + 1]);
        return cum[k] + d * vk + 0.5 * d * d * (vk1 - vk) / dw;
    };

    double b = 0.0;
    for (int j = 0; j < n; ++j) {
        const double w = grid.point(j);
        const double wt = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        b += wt * dw * std::abs(g.g_hat(w)) *
             (mass_below(w - tr.a1) + (total - mass_below(w + tr.a2)));
    }
    // Window spectrum mass beyond the grid covers both saturated far ends.
    b += total * g.l1_tail(std::max(std::fabs(grid.left()), std::fabs(grid.right())));
    return b / kTwoPi;
}

}  // namespace wft
