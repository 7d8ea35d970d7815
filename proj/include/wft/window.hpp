#ifndef WFT_WINDOW_HPP
#define WFT_WINDOW_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wft/grid.hpp"

namespace wft {

enum class WindowKind { gaussian, hann, triangular, custom };

/// Definition block for user-supplied windows. `g_hat` must honor the library
/// transform convention g_hat(w) = integral g(x) e^{-ixw} dx.
struct CustomWindowDef {
    std::function<cplx(double)> g;
    std::function<cplx(double)> g_hat;
    std::function<cplx(double)> g_prime;   // optional; finite differences otherwise
    std::vector<double> kink_positions;    // points where g is not smooth
    std::optional<double> support_half_width;
    double anchor = 0.0;
};

/// Analysis window with closed-form evaluators and the derived metadata the
/// inversion operators need (L1 norm of g_hat, spectral tails, kink set).
class Window {
  public:
    WindowKind kind() const { return kind_; }
    double anchor() const { return anchor_; }
    double sigma() const { return sigma_; }
    double half_width() const { return width_; }

    cplx g(double x) const;
    /// Derivative of g; `side` breaks the tie at kink points (+1 right, -1 left).
    cplx g_prime(double x, int side = +1) const;
    cplx g_hat(double omega) const;

    cplx g_at_anchor() const { return g(anchor_); }
    bool invertible_anchor() const;

    /// Upper-accurate L1 norm of g_hat (exact 2*pi for the nonnegative-spectrum kinds).
    double l1_g_hat() const { return l1_g_hat_; }
    /// Squared L2 norm of g, from closed forms where available.
    double l2sq_g() const { return l2sq_g_; }
    /// Characteristic variation scale of g_hat, used to size quadrature panels.
    double spectral_scale() const { return spectral_scale_; }
    std::optional<double> support_half_width() const { return support_; }
    /// Points where g is not C^3; inversion quadrature splits panels there.
    const std::vector<double>& kink_positions() const { return kinks_; }

    /// Upper bound on the mass of |g_hat| outside [-radius, radius].
    double l1_tail(double radius) const;
    /// Smallest radius R with l1_tail(R) <= rel_eps * l1_g_hat(), capped at 1e8.
    double mass_radius(double rel_eps) const;

    std::string describe() const;

    friend Window make_gaussian_window(double sigma, double anchor);
    friend Window make_hann_window(double half_width, double anchor);
    friend Window make_triangular_window(double half_width, double anchor);
    friend Window make_custom_window(const CustomWindowDef& def);

  private:
    Window() = default;

    WindowKind kind_ = WindowKind::gaussian;
    double anchor_ = 0.0;
    double sigma_ = 1.0;
    double width_ = 1.0;
    double l1_g_hat_ = 0.0;
    double l2sq_g_ = 0.0;
    double spectral_scale_ = 1.0;
    std::optional<double> support_;
    std::vector<double> kinks_;
    CustomWindowDef custom_;
};

Window make_gaussian_window(double sigma = 1.0, double anchor = 0.0);
Window make_hann_window(double half_width = 1.0, double anchor = 0.0);
Window make_triangular_window(double half_width = 1.0, double anchor = 0.0);

/// Validates continuity and integrability of the supplied evaluators on probe
/// grids; throws std::invalid_argument when the checks fail.
Window make_custom_window(const CustomWindowDef& def);

/// CLI-facing factory. `param` is sigma for gaussian, half width otherwise.
Window make_window(const std::string& kind, double param, double anchor);

/// Threshold below which an anchor value makes inversion ill-posed.
inline constexpr double kAnchorFloor = 1e-12;

}  // namespace wft

#endif
