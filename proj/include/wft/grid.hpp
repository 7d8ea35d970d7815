#ifndef WFT_GRID_HPP
#define WFT_GRID_HPP

#include <complex>
#include <stdexcept>
#include <vector>

namespace wft {

using cplx = std::complex<double>;

/// Uniform grid of n points spanning [center - half_width, center + half_width].
/// Endpoints are exact grid points; spacing is dx = 2*half_width/(n-1).
struct UniformGrid {
    double center = 0.0;
    double half_width = 0.0;
    int n = 0;

    static UniformGrid symmetric(double half_width, int n);
    static UniformGrid offset(double center, double half_width, int n);

    double dx() const { return 2.0 * half_width / (n - 1); }
    double left() const { return center - half_width; }
    double right() const { return center + half_width; }
    double point(int k) const { return left() + k * dx(); }
    double length() const { return 2.0 * half_width; }

    bool operator==(const UniformGrid&) const = default;
};

/// Complex samples on a uniform grid. Values are stored as complex doubles
/// even for real signals; modulation produces complex values immediately.
struct SampledSignal {
    UniformGrid grid;
    std::vector<cplx> values;

    SampledSignal() = default;
    SampledSignal(UniformGrid g, std::vector<cplx> v);
    static SampledSignal zero(UniformGrid g);

    int size() const { return grid.n; }
    bool all_finite() const;
};

/// Exponent for L^p norms. The convergence statements require p in (1, inf];
/// p = 1 is allowed only through the explicit extended flag.
class LpExponent {
  public:
    static LpExponent finite(double p, bool extended = false);
    static LpExponent infinity();

    bool is_infinite() const { return inf_; }
    double value() const { return p_; }
    double conjugate() const;
    bool extended() const { return extended_; }

  private:
    LpExponent(double p, bool inf, bool extended) : p_(p), inf_(inf), extended_(extended) {}
    double p_ = 2.0;
    bool inf_ = false;
    bool extended_ = false;
};

enum class ResampleMethod { cubic, band_limited };

/// Trapezoidal integral over the grid, end weights 1/2. Exact for affine
/// integrands. Rejects non-finite samples.
cplx quadrature(const SampledSignal& s);

/// (sum |s_k|^p w_k dx)^{1/p} for finite p; max modulus for p = inf.
double lp_norm(const SampledSignal& s, const LpExponent& p);

/// Interpolate s onto a target grid contained in the source domain.
SampledSignal resample_to(const SampledSignal& s, const UniformGrid& target,
                          ResampleMethod method = ResampleMethod::cubic);

SampledSignal operator+(const SampledSignal& a, const SampledSignal& b);
SampledSignal operator-(const SampledSignal& a, const SampledSignal& b);
SampledSignal operator*(cplx c, const SampledSignal& s);

/// Evaluate a cubic 4-point Lagrange interpolant of the samples at x.
cplx interpolate_cubic(const SampledSignal& s, double x);

/// Derivative of the cubic interpolant at x.
cplx interpolate_cubic_derivative(const SampledSignal& s, double x);

/// Evaluate a quintic 6-point Lagrange interpolant of the samples at x.
/// Two orders more accurate than interpolate_cubic on oscillatory data.
cplx interpolate_quintic(const SampledSignal& s, double x);

}  // namespace wft

#endif
