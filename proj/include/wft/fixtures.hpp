#ifndef WFT_FIXTURES_HPP
#define WFT_FIXTURES_HPP

#include <string>
#include <vector>

#include "wft/grid.hpp"

namespace wft {

// Built-in test signals, addressed by name:
//   gaussian  exp(-x^2/2)
//   bump      exp(1 - 1/(1 - (x/4)^2)) on |x| < 4, zero outside
//   chirp     cos(6x + x^2/4) exp(-x^2 / (2 * 2.5^2))
//   zero      identically zero
cplx fixture_value(const std::string& name, double x);
SampledSignal make_fixture(const std::string& name, const UniformGrid& grid);
const std::vector<std::string>& fixture_names();
bool is_fixture(const std::string& name);

}  // namespace wft

#endif
