#ifndef WFT_LAB_HPP
#define WFT_LAB_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wft/engine.hpp"
#include "wft/grid.hpp"
#include "wft/inversion.hpp"
#include "wft/window.hpp"

namespace wft {

enum class Pathway { kernel, multiplier, modulation };

Pathway parse_pathway(const std::string& name);
std::string pathway_name(Pathway p);

/// Slack added to tail estimates when error curves are checked against them,
/// absorbing quadrature and rounding floors of the discrete operators.
inline constexpr double kTailSlack = 1e-7;

/// Slack added to the spectral envelope in the maximal-function probe.
inline constexpr double kEnvelopeSlack = 1e-8;

/// Default seed for the stability probe's perturbation stream.
inline constexpr std::uint64_t kDefaultNoiseSeed = 0x5EED;

/// Frequency band of the random perturbations (|omega| <= this).
inline constexpr double kNoiseBandLimit = 4.0;

/// Description of one convergence experiment: a fixture, a window, an
/// increasing list of symmetric truncation limits, and the norms to record.
struct SweepSpec {
    std::string fixture = "gaussian";
    std::string window_kind = "gaussian";
    double window_param = 1.0;
    double anchor = 0.0;
    Pathway pathway = Pathway::multiplier;
    std::vector<double> truncations = {1.0, 2.0, 4.0, 8.0, 16.0};
    std::vector<LpExponent> exponents = {LpExponent::finite(2.0)};
    UniformGrid grid = UniformGrid::symmetric(16.0, 2049);
    Engine engine = Engine::fast;

    /// Comma-free token naming the window, used in report rows.
    std::string window_label() const;
};

/// One (truncation, exponent) row of a sweep.
struct ErrorRecord {
    double truncation = 0.0;
    LpExponent exponent = LpExponent::finite(2.0);
    /// || T_A f - 2 pi conj(g(x0)) f ||_p on the grid.
    double lp_error = 0.0;
    double sup_error = 0.0;
    /// || T_A f ||_p / || f ||_p (0 for the zero signal).
    double operator_ratio = 0.0;
    /// Sup-norm truncation bound scaled by (grid length)^{1/p}.
    double tail_estimate = 0.0;
    double runtime_ms = 0.0;
};

struct SweepReport {
    SweepSpec spec;
    std::vector<ErrorRecord> records;  // truncation-major, exponent-minor
    std::vector<std::string> warnings;
};

/// Runs the sweep. Rejects non-invertible window anchors up front; truncation
/// lists must be strictly increasing and positive.
SweepReport run_sweep(const SweepSpec& spec);

/// CSV serialization, one row per (truncation, exponent), %.17g numbers.
/// Header: fixture,window,pathway,p,A,lp_error,sup_error,operator_ratio,tail_estimate,runtime_ms.
/// `include_runtime` false writes 0 in the runtime column so reruns stay
/// byte-identical.
std::string sweep_report_csv(const SweepReport& report, bool include_runtime = true);

/// Structured-text companion: grid and window configuration, pathway, and the
/// tolerances behind the tail estimates.
std::string sweep_report_manifest(const SweepReport& report);

struct MaximalProbeRecord {
    std::string fixture;
    /// || max over the truncation list of |T_A f| ||_p / || f ||_p.
    double ratio = 0.0;
    /// (1/2pi) ||ghat||_1 ||fhat||_1 / ||f||_p * (grid length)^{1/p} + slack.
    double envelope = 0.0;
};

struct MaximalProbeReport {
    std::vector<double> truncations;
    std::vector<MaximalProbeRecord> records;
};

/// Empirical maximal function over a list of symmetric truncations. Throws
/// when a recorded ratio exceeds its envelope (which the spectral bound on
/// the multiplier rules out up to rounding).
MaximalProbeReport maximal_function_probe(const std::vector<std::string>& fixtures,
                                          const Window& g, const std::vector<double>& truncations,
                                          const UniformGrid& grid,
                                          LpExponent p = LpExponent::finite(2.0),
                                          Engine engine = Engine::fast);

struct StabilityRecord {
    double epsilon = 0.0;
    double truncation = 0.0;
    /// max over the perturbations of || T_A delta ||_p / epsilon.
    double ratio = 0.0;
    bool skipped = false;  // epsilon = 0: ratio 0 by convention
};

struct StabilityReport {
    std::uint64_t seed = 0;
    int perturbation_count = 0;
    double band_limit = 0.0;
    double envelope_factor = 10.0;
    std::vector<StabilityRecord> records;  // epsilon-major, truncation-minor

    /// max/min of the recorded ratios across truncations for one epsilon
    /// (skipped records excluded; 0 when nothing qualifies).
    double uniformity(double epsilon) const;
};

/// Applies the truncated inversion to seeded random band-limited
/// perturbations scaled to || delta ||_p = epsilon and records, per
/// (epsilon, truncation), the largest || T_A delta ||_p / epsilon over the
/// perturbation set. Deterministic for a fixed seed; only the perturbation
/// enters the records (the operator is linear, so the base signal cancels —
/// `f` supplies the sample grid). Throws when the ratios fail to stay within
/// `envelope_factor` of each other across the truncation list.
StabilityReport stability_probe(const SampledSignal& f, const std::vector<double>& epsilons,
                                const Window& g, const std::vector<double>& truncations,
                                int perturbation_count = 20,
                                std::uint64_t seed = kDefaultNoiseSeed,
                                LpExponent p = LpExponent::finite(2.0),
                                Engine engine = Engine::fast, double envelope_factor = 10.0);

struct DecayRecord {
    double truncation = 0.0;
    /// max over grid points of |T_A f - 2 pi conj(g(x0)) f|.
    double max_error = 0.0;
    /// Sup-norm truncation bound at this truncation.
    double tail_estimate = 0.0;
};

struct DecayReport {
    std::vector<DecayRecord> records;
};

/// Full-grid pointwise error decay across a truncation sweep (the checkable
/// stand-in for almost-everywhere convergence, valid for smooth fixtures).
/// Throws when any max_error exceeds its tail_estimate + kTailSlack.
DecayReport pointwise_decay_probe(const SampledSignal& f, const Window& g,
                                  const std::vector<double>& truncations,
                                  Engine engine = Engine::fast);

}  // namespace wft

#endif
