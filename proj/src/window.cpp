#include "wft/window.hpp"

#include <cmath>

#include "wft/engine.hpp"

namespace wft {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Unit-width hann spectrum: integral of cos^2(pi x / 2) e^{-i xi x} over [-1, 1].
// Equal to pi^2 sin(xi) / (xi (pi^2 - xi^2)) with removable singularities.
double hann_hat_unit(double xi) {
    const double a = std::fabs(xi);
    if (a < 1e-2) {
        const double x2 = a * a;
        const double sinc = 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
        return kPi * kPi * sinc / (kPi * kPi - x2);
    }
    if (std::fabs(a - kPi) < 0.5) {
        const double d = a - kPi;
        const double sinc = std::fabs(d) < 1e-8 ? 1.0 - d * d / 6.0 : std::sin(d) / d;
        return kPi * kPi * sinc / ((kPi + d) * (kTwoPi + d));
    }
    return kPi * kPi * std::sin(a) / (a * (kPi * kPi - a * a));
}

// Unit-width triangular spectrum: 2 (1 - cos xi) / xi^2.
double tri_hat_unit(double xi) {
    const double a = std::fabs(xi);
    if (a < 1e-4) {
        const double x2 = a * a;
        return 1.0 - x2 / 12.0 + x2 * x2 / 360.0;
    }
    const double s = std::sin(0.5 * a);
    return 4.0 * s * s / (a * a);
}

double hann_l1_unit() {
    // |g_hat| integrated per half-period lobe; lobes meet at multiples of pi.
    const int lobes = 2000;
    double acc = 0.0;
    for (int k = 0; k < lobes; ++k)
        acc += gl16_panel(k * kPi, (k + 1) * kPi, [](double xi) { return std::fabs(hann_hat_unit(xi)); });
    const double edge = lobes * kPi;
    const double tail = -std::log1p(-kPi * kPi / (edge * edge));  // bound past the last lobe
    return 2.0 * acc + tail;
}

double custom_abs_integral(const std::function<cplx(double)>& fn, double radius, int points) {
    double acc = 0.0;
    const double dx = 2.0 * radius / (points - 1);
    for (int k = 0; k < points; ++k) {
        const double w = (k == 0 || k == points - 1) ? 0.5 : 1.0;
        acc += w * std::abs(fn(-radius + k * dx));
    }
    return acc * dx;
}

}  // namespace

cplx Window::g(double x) const {
    switch (kind_) {
        case WindowKind::gaussian:
            return std::exp(-x * x / (2.0 * sigma_ * sigma_));
        case WindowKind::hann: {
            if (std::fabs(x) >= width_) return 0.0;
            const double c = std::cos(kPi * x / (2.0 * width_));
            return c * c;
        }
        case WindowKind::triangular: {
            const double r = std::fabs(x) / width_;
            return r >= 1.0 ? 0.0 : 1.0 - r;
        }
        case WindowKind::custom:
            return custom_.g(x);
    }
    return 0.0;
}

cplx Window::g_prime(double x, int side) const {
    switch (kind_) {
        case WindowKind::gaussian:
            return -x / (sigma_ * sigma_) * std::exp(-x * x / (2.0 * sigma_ * sigma_));
        case WindowKind::hann:
            // g' is continuous (vanishes at the support edge); side is moot.
            if (std::fabs(x) >= width_) return 0.0;
            return -(kPi / (2.0 * width_)) * std::sin(kPi * x / width_);
        case WindowKind::triangular: {
            // Nudge off the kink set {-w, 0, w} in the requested direction.
            const double probe = x + (side >= 0 ? 1.0 : -1.0) * 1e-9 * std::max(1.0, width_);
            if (std::fabs(probe) >= width_) return 0.0;
            return probe > 0.0 ? -1.0 / width_ : 1.0 / width_;
        }
        case WindowKind::custom: {
            if (custom_.g_prime) return custom_.g_prime(x);
            const double h = 1e-6;
            return (custom_.g(x + h) - custom_.g(x - h)) / (2.0 * h);
        }
    }
    return 0.0;
}

cplx Window::g_hat(double omega) const {
    switch (kind_) {
        case WindowKind::gaussian:
            return sigma_ * std::sqrt(kTwoPi) * std::exp(-sigma_ * sigma_ * omega * omega / 2.0);
        case WindowKind::hann:
            return width_ * hann_hat_unit(width_ * omega);
        case WindowKind::triangular:
            return width_ * tri_hat_unit(width_ * omega);
        case WindowKind::custom:
            return custom_.g_hat(omega);
    }
    return 0.0;
}

bool Window::invertible_anchor() const { return std::abs(g_at_anchor()) >= kAnchorFloor; }

double Window::l1_tail(double radius) const {
    if (radius <= 0.0) return l1_g_hat_;
    switch (kind_) {
        case WindowKind::gaussian:
            return kTwoPi * std::erfc(sigma_ * radius / std::sqrt(2.0));
        case WindowKind::hann: {
            const double p = width_ * radius;
            if (p <= 1.2 * kPi) return l1_g_hat_;
            return std::min(l1_g_hat_, -std::log1p(-kPi * kPi / (p * p)));
        }
        case WindowKind::triangular: {
            const double p = width_ * radius;
            if (p < 1.0) return l1_g_hat_;
            return std::min(l1_g_hat_, 4.0 / p + 8.0 / (p * p));
        }
        case WindowKind::custom: {
            // Probe-based estimate: measured mass beyond the radius inside the
            // probe band, plus a decay-assuming allowance past the band edge.
            const double band = 512.0;
            if (radius >= band) {
                const double edge = std::abs(custom_.g_hat(band));
                return edge * band;  // assumes at least 1/w^2 decay
            }
            double acc = 0.0;
            const int steps = 4096;
            const double dw = (band - radius) / steps;
            for (int k = 0; k <= steps; ++k) {
                const double w = (k == 0 || k == steps) ? 0.5 : 1.0;
                acc += w * (std::abs(custom_.g_hat(radius + k * dw)) +
                            std::abs(custom_.g_hat(-radius - k * dw)));
            }
            return std::min(l1_g_hat_, acc * dw + std::abs(custom_.g_hat(band)) * band);
        }
    }
    return l1_g_hat_;
}

double Window::mass_radius(double rel_eps) const {
    const double target = rel_eps * l1_g_hat_;
    double lo = 0.0, hi = 1e8;
    if (l1_tail(hi) > target) return hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (l1_tail(mid) <= target ? hi : lo) = mid;
    }
    return hi;
}

std::string Window::describe() const {
    switch (kind_) {
        case WindowKind::gaussian:
            return "gaussian(sigma=" + std::to_string(sigma_) + ",anchor=" + std::to_string(anchor_) + ")";
        case WindowKind::hann:
            return "hann(half_width=" + std::to_string(width_) + ",anchor=" + std::to_string(anchor_) + ")";
        case WindowKind::triangular:
            return "triangular(half_width=" + std::to_string(width_) + ",anchor=" + std::to_string(anchor_) + ")";
        case WindowKind::custom:
            return "custom(anchor=" + std::to_string(anchor_) + ")";
    }
    return "window";
}

Window make_gaussian_window(double sigma, double anchor) {
    if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(anchor))
        throw std::invalid_argument("gaussian window needs finite sigma > 0");
    Window w;
    w.kind_ = WindowKind::gaussian;
    w.sigma_ = sigma;
    w.anchor_ = anchor;
    w.l1_g_hat_ = kTwoPi;
    w.l2sq_g_ = sigma * std::sqrt(kPi);
    w.spectral_scale_ = 1.0 / sigma;
    return w;
}

Window make_hann_window(double half_width, double anchor) {
    if (!(half_width > 0.0) || !std::isfinite(half_width) || !std::isfinite(anchor))
        throw std::invalid_argument("hann window needs finite half_width > 0");
    static const double l1_unit = hann_l1_unit();
    Window w;
    w.kind_ = WindowKind::hann;
    w.width_ = half_width;
    w.anchor_ = anchor;
    w.l1_g_hat_ = l1_unit;  // scale invariant
    w.l2sq_g_ = 0.75 * half_width;
    w.spectral_scale_ = 1.0 / half_width;
    w.support_ = half_width;
    w.kinks_ = {-half_width, half_width};  // g'' jumps at the support edge
    return w;
}

Window make_triangular_window(double half_width, double anchor) {
    if (!(half_width > 0.0) || !std::isfinite(half_width) || !std::isfinite(anchor))
        throw std::invalid_argument("triangular window needs finite half_width > 0");
    Window w;
    w.kind_ = WindowKind::triangular;
    w.width_ = half_width;
    w.anchor_ = anchor;
    w.l1_g_hat_ = kTwoPi;  // spectrum is nonnegative, so the mass is 2 pi g(0)
    w.l2sq_g_ = 2.0 * half_width / 3.0;
    w.spectral_scale_ = 1.0 / half_width;
    w.support_ = half_width;
    w.kinks_ = {-half_width, 0.0, half_width};
    return w;
}

Window make_custom_window(const CustomWindowDef& def) {
    if (!def.g || !def.g_hat) throw std::invalid_argument("custom window needs g and g_hat evaluators");
    const double probe = def.support_half_width.value_or(64.0);

    // Continuity probe: adjacent samples of a continuous window cannot jump by
    // a large fraction of the overall range at the probe resolution.
    const int n = 8193;
    const double dx = 2.0 * probe / (n - 1);
    double vmax = 0.0, jump = 0.0;
    cplx prev = def.g(-probe);
    for (int k = 1; k < n; ++k) {
        const cplx cur = def.g(-probe + k * dx);
        if (!std::isfinite(cur.real()) || !std::isfinite(cur.imag()))
            throw std::invalid_argument("custom window sample is not finite");
        vmax = std::max(vmax, std::abs(cur));
        jump = std::max(jump, std::abs(cur - prev));
        prev = cur;
    }
    if (vmax == 0.0) throw std::invalid_argument("custom window is identically zero on the probe domain");
    if (jump > 0.25 * vmax)
        throw std::invalid_argument("custom window fails the continuity probe");

    // Integrability probe: the absolute mass must have stopped growing.
    const double half_mass = custom_abs_integral(def.g, probe / 2.0, 4097);
    const double full_mass = custom_abs_integral(def.g, probe, 8193);
    if (!def.support_half_width && full_mass > half_mass * 1.05 + 1e-12)
        throw std::invalid_argument("custom window mass still grows at the probe edge; not integrable enough");
    const double hat_half = custom_abs_integral(def.g_hat, 256.0, 8193);
    const double hat_full = custom_abs_integral(def.g_hat, 512.0, 16385);
    if (hat_full > hat_half * 1.05 + 1e-12)
        throw std::invalid_argument("custom window spectrum mass still grows at the probe edge");

    Window w;
    w.kind_ = WindowKind::custom;
    w.anchor_ = def.anchor;
    w.custom_ = def;
    w.support_ = def.support_half_width;
    w.kinks_ = def.kink_positions;
    w.l1_g_hat_ = hat_full + std::abs(def.g_hat(512.0)) * 512.0;
    // Squared L2 norm over the probe domain.
    double l2 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double wt = (k == 0 || k == n - 1) ? 0.5 : 1.0;
        l2 += wt * std::norm(def.g(-probe + k * dx));
    }
    w.l2sq_g_ = l2 * dx;
    w.spectral_scale_ = 1.0;
    return w;
}

Window make_window(const std::string& kind, double param, double anchor) {
    if (kind == "gaussian") return make_gaussian_window(param, anchor);
    if (kind == "hann") return make_hann_window(param, anchor);
    if (kind == "triangular") return make_triangular_window(param, anchor);
    throw std::invalid_argument("unknown window kind: " + kind);
}

}  // namespace wft
