#include "wft/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wft {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

UniformGrid UniformGrid::symmetric(double half_width, int n) {
    return offset(0.0, half_width, n);
}

UniformGrid UniformGrid::offset(double center, double half_width, int n) {
    if (n < 2) throw std::invalid_argument("grid needs at least two points");
    if (!(half_width > 0.0) || !std::isfinite(half_width) || !std::isfinite(center))
        throw std::invalid_argument("grid extent must be positive and finite");
    return UniformGrid{center, half_width, n};
}

SampledSignal::SampledSignal(UniformGrid g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n)
        throw std::invalid_argument("sample count does not match grid");
}

SampledSignal SampledSignal::zero(UniformGrid g) {
    return SampledSignal(g, std::vector<cplx>(g.n, cplx(0.0, 0.0)));
}

bool SampledSignal::all_finite() const {
    for (const cplx& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

LpExponent LpExponent::finite(double p, bool extended) {
    if (!std::isfinite(p)) throw std::invalid_argument("use LpExponent::infinity() for p = inf");
    if (extended ? p < 1.0 : p <= 1.0)
        throw std::invalid_argument(extended ? "exponent must satisfy p >= 1"
                                             : "exponent must satisfy p > 1 (p = 1 needs the extended flag)");
    return LpExponent(p, false, extended);
}

LpExponent LpExponent::infinity() { return LpExponent(0.0, true, false); }

double LpExponent::conjugate() const {
    if (inf_) return 1.0;
    if (p_ == 1.0) return std::numeric_limits<double>::infinity();
    return p_ / (p_ - 1.0);
}

cplx quadrature(const SampledSignal& s) {
    if (!s.all_finite()) throw std::invalid_argument("quadrature: non-finite sample");
    const int n = s.grid.n;
    cplx acc = 0.5 * (s.values[0] + s.values[n - 1]);
    for (int k = 1; k + 1 < n; ++k) acc += s.values[k];
    return acc * s.grid.dx();
}

double lp_norm(const SampledSignal& s, const LpExponent& p) {
    if (!s.all_finite()) throw std::invalid_argument("lp_norm: non-finite sample");
    const int n = s.grid.n;
    if (p.is_infinite()) {
        double m = 0.0;
        for (const cplx& v : s.values) m = std::max(m, std::abs(v));
        return m;
    }
    const double pv = p.value();
    double acc = 0.5 * (std::pow(std::abs(s.values[0]), pv) + std::pow(std::abs(s.values[n - 1]), pv));
    for (int k = 1; k + 1 < n; ++k) acc += std::pow(std::abs(s.values[k]), pv);
    return std::pow(acc * s.grid.dx(), 1.0 / pv);
}

namespace {

// 4-point Lagrange weights on equispaced nodes around the query point.
struct CubicStencil {
    int base;       // index of the first of four nodes
    double t;       // query offset from node base+1 in units of dx
};

CubicStencil locate(const UniformGrid& g, double x) {
    const double eps = 1e-9 * g.dx();
    if (x < g.left() - eps || x > g.right() + eps)
        throw std::invalid_argument("interpolation query outside source domain");
    double rel = (x - g.left()) / g.dx();
    int cell = static_cast<int>(std::floor(rel));
    cell = std::clamp(cell, 0, g.n - 2);
    int base = std::clamp(cell - 1, 0, g.n - 4);
    return CubicStencil{base, rel - (base + 1)};
}

// Same scheme widened to six nodes; t is the offset from node base+2.
CubicStencil locate6(const UniformGrid& g, double x) {
    const double eps = 1e-9 * g.dx();
    if (x < g.left() - eps || x > g.right() + eps)
        throw std::invalid_argument("interpolation query outside source domain");
    double rel = (x - g.left()) / g.dx();
    int cell = static_cast<int>(std::floor(rel));
    cell = std::clamp(cell, 0, g.n - 2);
    int base = std::clamp(cell - 2, 0, g.n - 6);
    return CubicStencil{base, rel - (base + 2)};
}

}  // namespace

cplx interpolate_cubic(const SampledSignal& s, double x) {
    if (s.grid.n < 4) throw std::invalid_argument("cubic interpolation needs at least 4 points");
    CubicStencil st = locate(s.grid, x);
    const double t = st.t;
    // Lagrange basis on nodes at offsets {-1, 0, 1, 2}.
    const double w0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
    const double w1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    const double w2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
    const double w3 = (t + 1.0) * t * (t - 1.0) / 6.0;
    const cplx* v = s.values.data() + st.base;
    return w0 * v[0] + w1 * v[1] + w2 * v[2] + w3 * v[3];
}

cplx interpolate_quintic(const SampledSignal& s, double x) {
    if (s.grid.n < 6) throw std::invalid_argument("quintic interpolation needs at least 6 points");
    CubicStencil st = locate6(s.grid, x);
    const double t = st.t;
    // Lagrange basis on nodes at offsets {-2, -1, 0, 1, 2, 3}.
    const double p2m = t + 2.0, p1m = t + 1.0, p0 = t;
    const double p1 = t - 1.0, p2 = t - 2.0, p3 = t - 3.0;
    const double w0 = -p1m * p0 * p1 * p2 * p3 / 120.0;
    const double w1 = p2m * p0 * p1 * p2 * p3 / 24.0;
    const double w2 = -p2m * p1m * p1 * p2 * p3 / 12.0;
    const double w3 = p2m * p1m * p0 * p2 * p3 / 12.0;
    const double w4 = -p2m * p1m * p0 * p1 * p3 / 24.0;
    const double w5 = p2m * p1m * p0 * p1 * p2 / 120.0;
    const cplx* v = s.values.data() + st.base;
    return w0 * v[0] + w1 * v[1] + w2 * v[2] + w3 * v[3] + w4 * v[4] + w5 * v[5];
}

cplx interpolate_cubic_derivative(const SampledSignal& s, double x) {
    if (s.grid.n < 4) throw std::invalid_argument("cubic interpolation needs at least 4 points");
    CubicStencil st = locate(s.grid, x);
    const double t = st.t;
    const double w0 = -(3.0 * t * t - 6.0 * t + 2.0) / 6.0;
    const double w1 = (3.0 * t * t - 4.0 * t - 1.0) / 2.0;
    const double w2 = -(3.0 * t * t - 2.0 * t - 2.0) / 2.0;
    const double w3 = (3.0 * t * t - 1.0) / 6.0;
    const cplx* v = s.values.data() + st.base;
    return (w0 * v[0] + w1 * v[1] + w2 * v[2] + w3 * v[3]) / s.grid.dx();
}

namespace {

SampledSignal resample_band_limited(const SampledSignal& s, const UniformGrid& target) {
    // Evaluate the trapezoidal spectrum on the source band, then synthesize at
    // the target points. Serial: resampling is not a hot path.
    const UniformGrid& sg = s.grid;
    const int n = sg.n;
    const double omega_max = kPi / sg.dx();
    const int m = n;
    const double dw = 2.0 * omega_max / (m - 1);
    std::vector<cplx> spec(m);
    for (int j = 0; j < m; ++j) {
        const double w = -omega_max + j * dw;
        cplx acc = 0.0;
        for (int k = 0; k < n; ++k) {
            const double wk = (k == 0 || k == n - 1) ? 0.5 : 1.0;
            acc += s.values[k] * std::polar(wk, -sg.point(k) * w);
        }
        spec[j] = acc * sg.dx();
    }
    std::vector<cplx> out(target.n);
    for (int i = 0; i < target.n; ++i) {
        const double x = target.point(i);
        cplx acc = 0.0;
        for (int j = 0; j < m; ++j) {
            const double wj = (j == 0 || j == m - 1) ? 0.5 : 1.0;
            acc += spec[j] * std::polar(wj, x * (-omega_max + j * dw));
        }
        out[i] = acc * (dw / (2.0 * kPi));
    }
    return SampledSignal(target, std::move(out));
}

}  // namespace

SampledSignal resample_to(const SampledSignal& s, const UniformGrid& target, ResampleMethod method) {
    if (!s.all_finite()) throw std::invalid_argument("resample_to: non-finite sample");
    if (target == s.grid) return s;  // identity resample keeps values bit-for-bit
    const double eps = 1e-9 * s.grid.dx();
    if (target.left() < s.grid.left() - eps || target.right() > s.grid.right() + eps)
        throw std::invalid_argument("resample target extends outside the source domain");
    if (method == ResampleMethod::band_limited) return resample_band_limited(s, target);
    std::vector<cplx> out(target.n);
    for (int i = 0; i < target.n; ++i) out[i] = interpolate_cubic(s, target.point(i));
    return SampledSignal(target, std::move(out));
}

namespace {

void require_same_grid(const SampledSignal& a, const SampledSignal& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("signals live on different grids");
}

}  // namespace

SampledSignal operator+(const SampledSignal& a, const SampledSignal& b) {
    require_same_grid(a, b);
    SampledSignal r = a;
    for (int k = 0; k < r.size(); ++k) r.values[k] += b.values[k];
    return r;
}

SampledSignal operator-(const SampledSignal& a, const SampledSignal& b) {
    require_same_grid(a, b);
    SampledSignal r = a;
    for (int k = 0; k < r.size(); ++k) r.values[k] -= b.values[k];
    return r;
}

SampledSignal operator*(cplx c, const SampledSignal& s) {
    SampledSignal r = s;
    for (cplx& v : r.values) v *= c;
    return r;
}

}  // namespace wft
