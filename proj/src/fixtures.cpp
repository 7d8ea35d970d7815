#include "wft/fixtures.hpp"

#include <cmath>
#include <stdexcept>

namespace wft {

cplx fixture_value(const std::string& name, double x) {
    if (name == "gaussian") return std::exp(-0.5 * x * x);
    if (name == "bump") {
        const double r = x / 4.0;
        if (std::fabs(r) >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - r * r));
    }
    if (name == "chirp") {
        const double s = 2.5;
        return std::cos(6.0 * x + 0.25 * x * x) * std::exp(-x * x / (2.0 * s * s));
    }
    if (name == "zero") return 0.0;
    throw std::invalid_argument("unknown fixture: " + name);
}

SampledSignal make_fixture(const std::string& name, const UniformGrid& grid) {
    SampledSignal s = SampledSignal::zero(grid);
    for (int k = 0; k < grid.n; ++k) s.values[k] = fixture_value(name, grid.point(k));
    return s;
}

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = {"gaussian", "bump", "chirp", "zero"};
    return names;
}

bool is_fixture(const std::string& name) {
    for (const auto& n : fixture_names())
        if (n == name) return true;
    return false;
}

}  // namespace wft
