#include "wft/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

#include "wft/fixtures.hpp"
#include "wft/fourier.hpp"

namespace wft {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string fmt_exponent(const LpExponent& p) { return p.is_infinite() ? "inf" : fmt17(p.value()); }

void validate_truncation_list(const std::vector<double>& a) {
    if (a.empty()) throw std::invalid_argument("truncation list is empty");
    double prev = 0.0;
    for (double v : a) {
        if (!std::isfinite(v) || v <= 0.0)
            throw std::invalid_argument("truncation limits must be positive and finite");
        if (v <= prev) throw std::invalid_argument("truncation list must be strictly increasing");
        prev = v;
    }
}

void append_unique(std::vector<std::string>& out, const std::vector<std::string>& add) {
    for (const auto& w : add)
        if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
}

/// (grid length)^{1/p}, the factor turning a sup bound into an L^p bound; 1
/// for p = inf.
double measure_factor(const UniformGrid& grid, const LpExponent& p) {
    return p.is_infinite() ? 1.0 : std::pow(grid.length(), 1.0 / p.value());
}

std::string engine_name(Engine e) { return e == Engine::fast ? "fast" : "reference"; }

}  // namespace

Pathway parse_pathway(const std::string& name) {
    if (name == "kernel") return Pathway::kernel;
    if (name == "multiplier") return Pathway::multiplier;
    if (name == "modulation") return Pathway::modulation;
    throw std::invalid_argument("unknown pathway: " + name);
}

std::string pathway_name(Pathway p) {
    switch (p) {
        case Pathway::kernel: return "kernel";
        case Pathway::multiplier: return "multiplier";
        case Pathway::modulation: return "modulation";
    }
    throw std::invalid_argument("unknown pathway value");
}

std::string SweepSpec::window_label() const {
    return window_kind + "(" + fmt_short(window_param) + ")@" + fmt_short(anchor);
}

SweepReport run_sweep(const SweepSpec& spec) {
    if (!is_fixture(spec.fixture)) throw std::invalid_argument("unknown fixture: " + spec.fixture);
    if (spec.exponents.empty()) throw std::invalid_argument("exponent list is empty");
    validate_truncation_list(spec.truncations);

    const Window g = make_window(spec.window_kind, spec.window_param, spec.anchor);
    if (!g.invertible_anchor()) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "window vanishes at its anchor (|g(x0)| = %.3g < %.3g); the sweep's error "
                      "target is ill-posed",
                      std::abs(g.g_at_anchor()), kAnchorFloor);
        throw DegenerateAnchorError(buf);
    }

    SweepReport report;
    report.spec = spec;

    const SampledSignal f = make_fixture(spec.fixture, spec.grid);
    const SampledSignal fhat = forward_ft(f, spec.engine);
    const SampledSignal target = (kTwoPi * std::conj(g.g_at_anchor())) * f;
    const double band = kPi / spec.grid.dx();

    std::vector<double> f_norms;
    f_norms.reserve(spec.exponents.size());
    for (const auto& p : spec.exponents) f_norms.push_back(lp_norm(f, p));

    for (double a : spec.truncations) {
        const TruncationPair tr = TruncationPair::symmetric(a);
        const double a_eff = std::min(a, band);
        Reconstruction rec;
        switch (spec.pathway) {
            case Pathway::kernel: rec = invert_kernel(f, g, tr, spec.engine); break;
            case Pathway::multiplier: rec = invert_multiplier(f, g, tr, spec.engine); break;
            case Pathway::modulation: {
                const UniformGrid nodes = modulation_grid_for_signal(fhat, a_eff);
                rec = invert_modulation(f, g, a, nodes, spec.engine);
                break;
            }
        }
        append_unique(report.warnings, rec.diagnostics.warnings);

        const double bound = truncation_sup_bound(fhat, g, TruncationPair::symmetric(a_eff));
        const SampledSignal err = rec.signal - target;
        const double sup_error = lp_norm(err, LpExponent::infinity());

        for (std::size_t i = 0; i < spec.exponents.size(); ++i) {
            const LpExponent& p = spec.exponents[i];
            ErrorRecord r;
            r.truncation = a;
            r.exponent = p;
            r.lp_error = p.is_infinite() ? sup_error : lp_norm(err, p);
            r.sup_error = sup_error;
            const double t_norm = lp_norm(rec.signal, p);
            r.operator_ratio = f_norms[i] > 0.0 ? t_norm / f_norms[i] : 0.0;
            r.tail_estimate = bound * measure_factor(spec.grid, p);
            r.runtime_ms = rec.diagnostics.runtime_ms;
            report.records.push_back(r);
        }
    }
    return report;
}

std::string sweep_report_csv(const SweepReport& report, bool include_runtime) {
    std::string out =
        "fixture,window,pathway,p,A,lp_error,sup_error,operator_ratio,tail_estimate,runtime_ms\n";
    const std::string prefix = report.spec.fixture + "," + report.spec.window_label() + "," +
                               pathway_name(report.spec.pathway) + ",";
    for (const auto& r : report.records) {
        out += prefix;
        out += fmt_exponent(r.exponent);
        out += ",";
        out += fmt17(r.truncation);
        out += ",";
        out += fmt17(r.lp_error);
        out += ",";
        out += fmt17(r.sup_error);
        out += ",";
        out += fmt17(r.operator_ratio);
        out += ",";
        out += fmt17(r.tail_estimate);
        out += ",";
        out += fmt17(include_runtime ? r.runtime_ms : 0.0);
        out += "\n";
    }
    return out;
}

std::string sweep_report_manifest(const SweepReport& report) {
    const SweepSpec& s = report.spec;
    const UniformGrid& grid = s.grid;
    std::string out;
    out += "[run]\n";
    out += "fixture = " + s.fixture + "\n";
    out += "window = " + s.window_label() + "\n";
    out += "pathway = " + pathway_name(s.pathway) + "\n";
    out += "engine = " + engine_name(s.engine) + "\n";
    out += "noise_seed = " + std::to_string(kDefaultNoiseSeed) + "\n";
    out += "[grid]\n";
    out += "center = " + fmt17(grid.center) + "\n";
    out += "half_width = " + fmt17(grid.half_width) + "\n";
    out += "points = " + std::to_string(grid.n) + "\n";
    out += "dx = " + fmt17(grid.dx()) + "\n";
    out += "frequency_band = " + fmt17(kPi / grid.dx()) + "\n";
    out += "[sweep]\n";
    out += "truncations =";
    for (double a : s.truncations) out += " " + fmt17(a);
    out += "\n";
    out += "exponents =";
    for (const auto& p : s.exponents) out += " " + fmt_exponent(p);
    out += "\n";
    out += "[tolerances]\n";
    out += "tail_slack = " + fmt17(kTailSlack) + "\n";
    out += "anchor_floor = " + fmt17(kAnchorFloor) + "\n";
    out += "modulation_mass_eps = " + fmt17(1e-12) + "\n";
    out += "envelope_slack = " + fmt17(kEnvelopeSlack) + "\n";
    out += "[warnings]\n";
    out += "count = " + std::to_string(report.warnings.size()) + "\n";
    for (const auto& w : report.warnings) out += "line = " + w + "\n";
    return out;
}

MaximalProbeReport maximal_function_probe(const std::vector<std::string>& fixtures,
                                          const Window& g, const std::vector<double>& truncations,
                                          const UniformGrid& grid, LpExponent p, Engine engine) {
    validate_truncation_list(truncations);
    if (fixtures.empty()) throw std::invalid_argument("fixture list is empty");

    MaximalProbeReport report;
    report.truncations = truncations;

    const UniformGrid freq = default_frequency_grid(grid);
    const double band = freq.half_width;
    std::vector<MultiplierProfile> profiles;
    profiles.reserve(truncations.size());
    for (double a : truncations)
        profiles.push_back(
            multiplier_profile(g, TruncationPair::symmetric(std::min(a, band)), freq));

    for (const auto& name : fixtures) {
        if (!is_fixture(name)) throw std::invalid_argument("unknown fixture: " + name);
        const SampledSignal f = make_fixture(name, grid);
        const SampledSignal fhat = forward_ft(f, freq, engine);
        const double f_norm = lp_norm(f, p);
        const double fhat_l1 = lp_norm(fhat, LpExponent::finite(1.0, true));

        SampledSignal peak = SampledSignal::zero(grid);
        for (const auto& prof : profiles) {
            SampledSignal product{freq, std::vector<cplx>(freq.n)};
            for (int j = 0; j < freq.n; ++j) product.values[j] = fhat.values[j] * prof.samples[j];
            const SampledSignal t = inverse_ft(product, grid, engine);
            for (int k = 0; k < grid.n; ++k)
                peak.values[k] = std::max(peak.values[k].real(), std::abs(t.values[k]));
        }

        MaximalProbeRecord rec;
        rec.fixture = name;
        if (f_norm > 0.0) {
            rec.ratio = lp_norm(peak, p) / f_norm;
            rec.envelope =
                (g.l1_g_hat() * fhat_l1 / kTwoPi) * measure_factor(grid, p) / f_norm +
                kEnvelopeSlack;
        } else {
            rec.ratio = 0.0;
            rec.envelope = kEnvelopeSlack;
        }
        if (rec.ratio > rec.envelope) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "maximal ratio %.6g for '%s' exceeds its spectral envelope %.6g",
                          rec.ratio, name.c_str(), rec.envelope);
            throw std::runtime_error(buf);
        }
        report.records.push_back(std::move(rec));
    }
    return report;
}

double StabilityReport::uniformity(double epsilon) const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    bool any = false;
    for (const auto& r : records) {
        if (r.skipped || r.epsilon != epsilon) continue;
        any = true;
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
    }
    if (!any || hi == 0.0) return 0.0;
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

StabilityReport stability_probe(const SampledSignal& f, const std::vector<double>& epsilons,
                                const Window& g, const std::vector<double>& truncations,
                                int perturbation_count, std::uint64_t seed, LpExponent p,
                                Engine engine, double envelope_factor) {
    validate_truncation_list(truncations);
    if (epsilons.empty()) throw std::invalid_argument("perturbation scale list is empty");
    for (double e : epsilons)
        if (!std::isfinite(e) || e < 0.0)
            throw std::invalid_argument("perturbation scales must be nonnegative and finite");
    if (perturbation_count <= 0)
        throw std::invalid_argument("perturbation count must be positive");
    if (!(envelope_factor >= 1.0))
        throw std::invalid_argument("envelope factor must be at least 1");

    StabilityReport report;
    report.seed = seed;
    report.perturbation_count = perturbation_count;
    report.band_limit = kNoiseBandLimit;
    report.envelope_factor = envelope_factor;

    const UniformGrid freq = default_frequency_grid(f.grid);
    std::mt19937_64 rng(seed);
    auto uniform01 = [&rng]() {
        // 53-bit mantissa draw, floored away from zero so the log is finite.
        return std::max(static_cast<double>(rng() >> 11) * 0x1.0p-53, 0x1.0p-53);
    };

    // Band-limited white-noise spectra, unit time-domain p-norm, drawn once
    // and reused across every (epsilon, truncation) pair.
    std::vector<std::vector<cplx>> noise(perturbation_count);
    for (auto& vals : noise) {
        vals.assign(freq.n, cplx{0.0, 0.0});
        for (int k = 0; k < freq.n; ++k) {
            if (std::fabs(freq.point(k)) > kNoiseBandLimit) continue;
            const double u1 = uniform01();
            const double u2 = uniform01();
            const double r = std::sqrt(-2.0 * std::log(u1));
            vals[k] = cplx{r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
        }
        const SampledSignal delta = inverse_ft(SampledSignal{freq, vals}, f.grid, engine);
        const double nrm = lp_norm(delta, p);
        if (nrm > 0.0)
            for (auto& v : vals) v *= 1.0 / nrm;
    }

    const double band = freq.half_width;
    std::vector<MultiplierProfile> profiles;
    profiles.reserve(truncations.size());
    for (double a : truncations)
        profiles.push_back(
            multiplier_profile(g, TruncationPair::symmetric(std::min(a, band)), freq));

    for (double eps : epsilons) {
        for (std::size_t ai = 0; ai < truncations.size(); ++ai) {
            StabilityRecord rec;
            rec.epsilon = eps;
            rec.truncation = truncations[ai];
            if (eps == 0.0) {
                rec.skipped = true;
                report.records.push_back(rec);
                continue;
            }
            double best = 0.0;
            SampledSignal product{freq, std::vector<cplx>(freq.n)};
            for (const auto& vals : noise) {
                for (int j = 0; j < freq.n; ++j)
                    product.values[j] = (eps * vals[j]) * profiles[ai].samples[j];
                const SampledSignal t = inverse_ft(product, f.grid, engine);
                best = std::max(best, lp_norm(t, p) / eps);
            }
            rec.ratio = best;
            report.records.push_back(rec);
        }
    }

    for (double eps : epsilons) {
        if (eps == 0.0) continue;
        const double u = report.uniformity(eps);
        if (u > envelope_factor) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "operator ratios vary by a factor %.6g across the truncation list "
                          "(envelope %.6g)",
                          u, envelope_factor);
            throw std::runtime_error(buf);
        }
    }
    return report;
}

DecayReport pointwise_decay_probe(const SampledSignal& f, const Window& g,
                                  const std::vector<double>& truncations, Engine engine) {
    validate_truncation_list(truncations);

    DecayReport report;
    const SampledSignal fhat = forward_ft(f, engine);
    const SampledSignal target = (kTwoPi * std::conj(g.g_at_anchor())) * f;
    const double band = kPi / f.grid.dx();

    for (double a : truncations) {
        const Reconstruction rec =
            invert_multiplier(f, g, TruncationPair::symmetric(a), engine);
        DecayRecord r;
        r.truncation = a;
        r.max_error = lp_norm(rec.signal - target, LpExponent::infinity());
        r.tail_estimate =
            truncation_sup_bound(fhat, g, TruncationPair::symmetric(std::min(a, band)));
        if (r.max_error > r.tail_estimate + kTailSlack) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "pointwise error %.6g at truncation %.6g exceeds its bound %.6g",
                          r.max_error, a, r.tail_estimate);
            throw std::runtime_error(buf);
        }
        report.records.push_back(r);
    }
    return report;
}

}  // namespace wft
