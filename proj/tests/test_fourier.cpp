#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wft/fixtures.hpp"
#include "wft/fourier.hpp"

using namespace wft;

namespace {

constexpr double kPi = 3.14159265358979323846;

double max_abs_diff(const SampledSignal& a, const SampledSignal& b) {
    double m = 0.0;
    for (int k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.values[k] - b.values[k]));
    return m;
}

const UniformGrid kTimeGrid = UniformGrid::symmetric(16.0, 2049);

}  // namespace

TEST_CASE("default frequency grid mirrors the sampling band") {
    const UniformGrid fg = default_frequency_grid(kTimeGrid);
    CHECK(fg.center == 0.0);
    CHECK(fg.n == kTimeGrid.n);
    CHECK(fg.half_width == doctest::Approx(kPi / kTimeGrid.dx()).epsilon(1e-15));
}

TEST_CASE("forward transform of a gaussian matches the closed form") {
    const SampledSignal f = make_fixture("gaussian", kTimeGrid);
    for (Engine e : {Engine::reference, Engine::fast}) {
        const SampledSignal hat = forward_ft(f, e);
        double m = 0.0;
        for (int j = 0; j < hat.size(); ++j) {
            const double w = hat.grid.point(j);
            const double expect = oracle::kSqrt2Pi * std::exp(-0.5 * w * w);
            m = std::max(m, std::abs(hat.values[j] - expect));
        }
        CHECK(m < 5e-12);
    }
}

TEST_CASE("engine agreement on the forward transform") {
    const SampledSignal f = make_fixture("chirp", kTimeGrid);
    const SampledSignal a = forward_ft(f, Engine::reference);
    const SampledSignal b = forward_ft(f, Engine::fast);
    CHECK(max_abs_diff(a, b) < 1e-12);
}

TEST_CASE("single-point transforms hit reference spectra") {
    const SampledSignal bump = make_fixture("bump", kTimeGrid);
    CHECK(std::abs(forward_ft_point(bump, 0.0) - oracle::kBumpHat0) < 1e-10);
    CHECK(std::abs(forward_ft_point(bump, 1.0) - oracle::kBumpHat1) < 1e-10);
    // The chirp envelope is ~1.2e-9 at the domain edge, which caps the
    // achievable agreement with the whole-line reference value.
    const SampledSignal chirp = make_fixture("chirp", kTimeGrid);
    CHECK(std::abs(forward_ft_point(chirp, 6.0) - oracle::kChirpHat6) < 2e-9);
    const SampledSignal zero = make_fixture("zero", kTimeGrid);
    CHECK(std::abs(forward_ft_point(zero, 3.3)) == 0.0);
}

TEST_CASE("inverse transform undoes the forward transform") {
    // The composition is exact on paper; numerically the phase products x*w
    // reach ~3e3 rad, so their rounding leaves a ~1e-9 floor under the
    // 2049-term cancellation sums.
    for (const char* name : {"gaussian", "chirp"}) {
        const SampledSignal f = make_fixture(name, kTimeGrid);
        for (Engine e : {Engine::reference, Engine::fast}) {
            const SampledSignal back = inverse_ft(forward_ft(f, e), kTimeGrid, e);
            CHECK(max_abs_diff(back, f) < 1e-8);
        }
    }
}

TEST_CASE("transform preserves energy up to the 2 pi convention") {
    const SampledSignal f = make_fixture("gaussian", kTimeGrid);
    const SampledSignal hat = forward_ft(f);
    const double lhs = lp_norm(hat, LpExponent::finite(2.0));
    const double rhs = std::sqrt(2.0 * kPi) * lp_norm(f, LpExponent::finite(2.0));
    CHECK(std::abs(lhs - rhs) < 1e-10 * rhs);
    // For this fixture the spectral L1 mass is exactly 2 pi.
    CHECK(std::abs(lp_norm(hat, LpExponent::finite(1.0, true)) - oracle::kL1FhatGauss) < 1e-10);
}

TEST_CASE("inverse point evaluation reproduces samples") {
    const SampledSignal f = make_fixture("gaussian", kTimeGrid);
    const SampledSignal hat = forward_ft(f);
    for (double x : {0.0, 0.25, -1.5, 3.0}) {
        CHECK(std::abs(inverse_ft_point(hat, x) - fixture_value("gaussian", x)) < 1e-11);
    }
}

TEST_CASE("modulation shifts the spectrum") {
    const SampledSignal f = make_fixture("gaussian", kTimeGrid);
    const double w0 = 2.5;
    const SampledSignal mod = modulate(f, w0);
    // (M_w f)^ (xi) = fhat(xi + w): check on a few frequencies.
    for (double xi : {-3.0, 0.0, 1.7}) {
        const cplx lhs = forward_ft_point(mod, xi);
        const cplx rhs = forward_ft_point(f, xi + w0);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
    // Pointwise modulus is untouched and the operation inverts cleanly.
    const SampledSignal back = modulate(mod, -w0);
    for (int k = 0; k < f.size(); ++k) {
        CHECK(std::abs(std::abs(mod.values[k]) - std::abs(f.values[k])) < 1e-15);
        CHECK(std::abs(back.values[k] - f.values[k]) < 1e-15);
    }
}

TEST_CASE("band restriction hits the reference value on both engines") {
    // Grid chosen so x = 0.6 is a grid point.
    const UniformGrid grid = UniformGrid::symmetric(16.0, 1601);
    const SampledSignal f = make_fixture("gaussian", grid);
    const int idx = 830;
    REQUIRE(std::abs(grid.point(idx) - 0.6) < 1e-12);
    for (Engine e : {Engine::reference, Engine::fast}) {
        const SampledSignal s = band_restrict(f, 2.0, e);
        CHECK(std::abs(s.values[idx] - oracle::kBandGaussA2X0p6) < 5e-12);
    }
}

TEST_CASE("band restriction engines agree on an oscillatory signal") {
    const UniformGrid grid = UniformGrid::symmetric(16.0, 1025);
    const SampledSignal f = make_fixture("chirp", grid);
    const SampledSignal a = band_restrict(f, 5.0, Engine::reference);
    const SampledSignal b = band_restrict(f, 5.0, Engine::fast);
    CHECK(max_abs_diff(a, b) < 1e-8);
}

TEST_CASE("band restriction validates and clamps the band limit") {
    const UniformGrid grid = UniformGrid::symmetric(8.0, 257);
    const SampledSignal f = make_fixture("gaussian", grid);
    CHECK_THROWS_AS(band_restrict(f, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(band_restrict(f, -3.0), std::invalid_argument);

    const double grid_band = kPi / grid.dx();
    std::vector<std::string> warnings;
    const SampledSignal clamped = band_restrict(f, 10.0 * grid_band, Engine::fast, &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("clamped") != std::string::npos);
    const SampledSignal at_band = band_restrict(f, grid_band, Engine::fast);
    CHECK(max_abs_diff(clamped, at_band) < 1e-12);
    // In-range limits leave the warning list alone.
    warnings.clear();
    band_restrict(f, 1.0, Engine::fast, &warnings);
    CHECK(warnings.empty());
}

TEST_CASE("wide bands reproduce fast-decaying signals and are idempotent") {
    const SampledSignal f = make_fixture("gaussian", kTimeGrid);
    const SampledSignal s8 = band_restrict(f, 8.0);
    CHECK(max_abs_diff(s8, f) < 1e-8);
    const SampledSignal twice = band_restrict(s8, 8.0);
    CHECK(max_abs_diff(twice, s8) < 1e-8);
}

TEST_CASE("band capture improves monotonically with the band limit") {
    const SampledSignal f = make_fixture("gaussian", kTimeGrid);
    double prev = lp_norm(f, LpExponent::finite(2.0));  // error of the empty band
    for (double a : {1.0, 2.0, 4.0, 8.0}) {
        const double err = lp_norm(band_restrict(f, a) - f, LpExponent::finite(2.0));
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-8);
}
