#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "jcfluor/oracle.hpp"
#include "jcfluor/spectrum.hpp"

using namespace jcfluor;
using namespace jcfluor::oracle;

namespace {
const SystemParams kResonant = make_params(0.0, 0.0, 1.0, 0.1);
const SystemParams kDetuned = make_params(0.0, 0.3, 1.0, 0.1);

NumericCorrelation make_correlation(const PhotonStatistics& dist, const SystemParams& params,
                                    double chi, int guard = 10) {
    const auto ops = make_operator_set(dist.m_max() + guard, 0);
    return NumericCorrelation(ops, build_hse(ops, params, chi), excited_state(dist));
}
}  // namespace

TEST_CASE("state preparation folds the truncation tail back in") {
    const auto dist = coherent_distribution(1.0);
    const auto state = excited_state(dist);
    double sum = 0.0;
    for (double p : state.p) sum += p;
    CHECK(std::abs(sum - 1.0) <= 1e-15);

    const auto ops = make_operator_set(4, 0);
    ExcitedDiagonalState bad{{0.6, 0.5}};
    CHECK_THROWS_AS(bad.validate(ops), std::invalid_argument);
    ExcitedDiagonalState wide{{1.0, 0.0, 0.0, 0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(wide.validate(ops), std::invalid_argument);
}

TEST_CASE("two-time correlation starts at the excited population") {
    const auto corr = make_correlation(vacuum_field(), kResonant, 0.0);
    CHECK(std::abs(corr.gamma(0.0, 0.0) - 1.0) <= 1e-12);
    for (double t : {0.7, 3.1, 12.0}) {
        const auto g = corr.gamma(t, 0.0);
        CHECK(std::abs(g.imag()) <= 1e-12);  // projector expectation stays real
        const auto coeffs = dressed::evolution_coeffs(0, t, kResonant, 0.0);
        CHECK(g.real() == doctest::Approx(std::norm(coeffs.d_n)).epsilon(1e-12));
    }
}

TEST_CASE("transient average of the vacuum beats against the ground state") {
    const auto corr = make_correlation(vacuum_field(), kResonant, 0.0);
    const auto tones = corr.averaged_tones();

    // The two dominant tones sit at the dressed energies; window leakage may
    // add tiny satellites well below the convergence tolerance.
    std::vector<NumericCorrelation::Tone> strong;
    for (const auto& tone : tones)
        if (std::abs(tone.amp) > 1e-3) strong.push_back(tone);
    REQUIRE(strong.size() == 2);
    std::sort(strong.begin(), strong.end(),
              [](const auto& a, const auto& b) { return a.freq < b.freq; });
    CHECK(strong[0].freq == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(strong[1].freq == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(strong[0].amp - std::complex<double>(0.25, 0.0)) <= 1e-4);
    CHECK(std::abs(strong[1].amp - std::complex<double>(0.25, 0.0)) <= 1e-4);
}

TEST_CASE("transient average matches the closed form over the detector memory") {
    struct Case {
        PhotonStatistics dist;
        SystemParams params;
        double chi;
    };
    const Case cases[] = {
        {vacuum_field(), kResonant, 0.0},
        {coherent_distribution(1.0), kResonant, 0.9},
        {thermal_distribution(1.0), kDetuned, 0.9},
    };
    for (const auto& c : cases) {
        const auto corr = make_correlation(c.dist, c.params, c.chi);
        std::vector<double> taus;
        for (int i = 0; i <= 32; ++i) taus.push_back(400.0 * i / 32.0);
        const auto numeric = corr.averaged(taus);
        double worst = 0.0;
        for (const auto& point : numeric) {
            const auto analytic = spectrum::correlation_avg(point.tau, c.dist, c.params, c.chi);
            worst = std::max(worst, std::abs(point.value - analytic.value));
        }
        CHECK(worst <= 1e-4);
    }
}

TEST_CASE("the average discriminates between the two weight conventions") {
    const auto dist = thermal_distribution(1.0);
    const auto corr = make_correlation(dist, kDetuned, 0.9);
    std::vector<double> taus;
    for (int i = 0; i <= 32; ++i) taus.push_back(400.0 * i / 32.0);
    const auto numeric = corr.averaged(taus);
    double dev_prob = 0.0, dev_sq = 0.0;
    for (const auto& point : numeric) {
        dev_prob = std::max(dev_prob,
                            std::abs(point.value - spectrum::correlation_avg(
                                                       point.tau, dist, kDetuned, 0.9,
                                                       spectrum::WeightMode::probability)
                                                       .value));
        dev_sq = std::max(dev_sq,
                          std::abs(point.value - spectrum::correlation_avg(
                                                     point.tau, dist, kDetuned, 0.9,
                                                     spectrum::WeightMode::squared_literal)
                                                     .value));
    }
    CHECK(dev_prob <= 1e-4);
    CHECK(dev_sq > 1e-2);
}

TEST_CASE("an impossible tolerance reports the unsettled frequencies") {
    const auto corr = make_correlation(vacuum_field(), kResonant, 0.0);
    AverageConfig cfg;
    cfg.convergence_tol = 1e-14;
    cfg.max_doublings = 1;
    try {
        corr.averaged_tones(cfg);
        FAIL("expected NonConvergence");
    } catch (const NonConvergence& e) {
        CHECK(!e.residual_frequencies.empty());
    }
}

TEST_CASE("damped transform of a single tone is a single lorentzian") {
    const double freq = 2.0, gamma = 0.1;
    CorrelationSamples samples;
    samples.tau_step = 0.01;
    samples.carrier = 0.0;
    const int n_pts = 40001;  // tau_max = 400
    samples.values.resize(n_pts);
    const std::complex<double> i(0.0, 1.0);
    for (int j = 0; j < n_pts; ++j)
        samples.values[static_cast<std::size_t>(j)] = std::exp(i * (freq * samples.tau_step * j));

    std::vector<double> nu;
    for (int k = -50; k <= 50; ++k) nu.push_back(2.0 + 0.05 * k);
    const auto s = spectrum_numeric(nu, samples, gamma);
    double worst = 0.0;
    for (std::size_t k = 0; k < nu.size(); ++k) {
        const double expected = gamma / (gamma * gamma + (nu[k] - freq) * (nu[k] - freq));
        worst = std::max(worst, std::abs(s[k] - expected) / (1.0 / gamma));
    }
    CHECK(worst <= 1e-6);

    std::fill(samples.values.begin(), samples.values.end(), std::complex<double>(0.0, 0.0));
    const auto zero = spectrum_numeric(nu, samples, gamma);
    for (double v : zero) CHECK(v == 0.0);
}

TEST_CASE("transform guards against unusable sampling") {
    CorrelationSamples samples;
    samples.tau_step = 0.01;
    samples.values.assign(40001, {1.0, 0.0});
    CHECK_THROWS_AS(spectrum_numeric({}, samples, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(spectrum_numeric({1.0}, samples, -0.1), std::invalid_argument);

    CorrelationSamples even = samples;
    even.values.resize(40000);
    CHECK_THROWS_AS(spectrum_numeric({1.0}, even, 0.1), std::invalid_argument);

    CorrelationSamples coarse = samples;
    coarse.tau_step = 0.5;  // cannot resolve nu = 10
    CHECK_THROWS_AS(spectrum_numeric({10.0}, coarse, 0.1), std::invalid_argument);

    CorrelationSamples short_window = samples;
    short_window.values.resize(2001);  // tau_max = 20 < 40/gamma
    CHECK_THROWS_AS(spectrum_numeric({1.0}, short_window, 0.1), std::invalid_argument);
}

TEST_CASE("spectrum is stable against widening the truncation guard") {
    const auto dist = coherent_distribution(1.0);
    const auto grid = spectrum::make_grid(-10.0, 10.0, 401);
    PipelineConfig tight;
    tight.guard = 5;
    PipelineConfig wide;
    wide.guard = 10;
    const auto a = effective_spectrum_numeric(kDetuned, 0.9, dist, grid, tight);
    const auto b = effective_spectrum_numeric(kDetuned, 0.9, dist, grid, wide);
    CHECK(rel_linf(a, b) <= 1e-8);
}

TEST_CASE("untransformed model with no nearby levels is the effective model") {
    const auto dist = coherent_distribution(1.0);
    const auto grid = spectrum::make_grid(-8.0, 8.0, 321);
    const auto full = full_model_spectrum(kDetuned, NearbyLevelSet{}, dist, grid);
    const auto eff = effective_spectrum_numeric(kDetuned, 0.0, dist, grid);
    CHECK(rel_linf(full, eff) <= 1e-10);
}

TEST_CASE("pipeline configuration is validated") {
    const auto dist = vacuum_field();
    const auto grid = spectrum::make_grid(-2.0, 2.0, 11);
    PipelineConfig bad;
    bad.guard = 0;
    CHECK_THROWS_AS(effective_spectrum_numeric(kResonant, 0.0, dist, grid, bad),
                    std::invalid_argument);
    bad = PipelineConfig{};
    bad.points_per_period = 2;
    CHECK_THROWS_AS(effective_spectrum_numeric(kResonant, 0.0, dist, grid, bad),
                    std::invalid_argument);
    CHECK_THROWS_AS(effective_spectrum_numeric(kResonant, 0.0, dist, {}, {}),
                    std::invalid_argument);
}

TEST_CASE("relative sup metric") {
    CHECK(rel_linf({1.0, 2.0}, {1.0, 2.0}) == 0.0);
    CHECK(rel_linf({1.0, 2.0}, {1.0, 2.001}) == doctest::Approx(5e-4).epsilon(1e-9));
    CHECK_THROWS_AS(rel_linf({1.0}, {1.0, 2.0}), std::invalid_argument);
}
