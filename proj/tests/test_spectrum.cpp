#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "jcfluor/spectrum.hpp"

using namespace jcfluor;
using namespace jcfluor::spectrum;

namespace {
const SystemParams kResonant = make_params(0.0, 0.0, 1.0, 0.1);
const SystemParams kDetuned = make_params(0.0, 0.3, 1.0, 0.1);

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}
}  // namespace

TEST_CASE("vacuum resonant field emits one symmetric doublet") {
    const auto lines = transition_lines(vacuum_field(), kResonant, 0.0);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].kind == Transition::vacuum_upper);
    CHECK(lines[0].center == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lines[0].weight == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(lines[1].kind == Transition::vacuum_lower);
    CHECK(lines[1].center == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(lines[1].weight == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("single-photon field emits four equal lines") {
    const auto dist = custom_distribution({0.0, 1.0});
    const auto lines = transition_lines(dist, kResonant, 0.0);
    REQUIRE(lines.size() == 6);  // two zero-weight vacuum lines plus four from m=1
    CHECK(lines[0].weight == 0.0);
    CHECK(lines[1].weight == 0.0);

    const double lo = std::sqrt(2.0) - 1.0, hi = std::sqrt(2.0) + 1.0;
    const double expected_centers[] = {lo, hi, -hi, -lo};
    for (int i = 0; i < 4; ++i) {
        CHECK(lines[2 + i].m == 1);
        CHECK(lines[2 + i].center == doctest::Approx(expected_centers[i]).epsilon(1e-14));
        CHECK(lines[2 + i].weight == doctest::Approx(0.125).epsilon(1e-12));
    }
}

TEST_CASE("line count follows the truncation") {
    const auto dist = coherent_distribution(1.0);
    const auto lines = transition_lines(dist, kResonant, 0.0);
    CHECK(lines.size() == 2 + 4 * static_cast<std::size_t>(dist.m_max()));
    for (const auto& line : lines) CHECK(line.weight >= 0.0);
}

TEST_CASE("squared weighting squares every line weight") {
    const auto dist = custom_distribution({0.25, 0.75});
    const auto prob = transition_lines(dist, kDetuned, 0.9, WeightMode::probability);
    const auto sq = transition_lines(dist, kDetuned, 0.9, WeightMode::squared_literal);
    REQUIRE(prob.size() == sq.size());
    for (std::size_t i = 0; i < prob.size(); ++i) {
        const double p = i < 2 ? 0.25 : 0.75;
        CHECK(sq[i].weight == doctest::Approx(prob[i].weight * p).epsilon(1e-12));
        CHECK(sq[i].center == prob[i].center);
    }
}

TEST_CASE("grid constructor mirrors symmetric ranges exactly") {
    const auto grid = make_grid(-10.0, 10.0, 4001);
    REQUIRE(grid.size() == 4001);
    CHECK(grid.front() == -10.0);
    CHECK(grid.back() == 10.0);
    CHECK(grid[2000] == 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(grid[i] == -grid[grid.size() - 1 - i]);
        if (i > 0) CHECK(grid[i] > grid[i - 1]);
    }
    const auto plain = make_grid(0.0, 1.0, 11);
    CHECK(plain.front() == 0.0);
    CHECK(plain.back() == 1.0);
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 1.0, 5), std::invalid_argument);
}

TEST_CASE("lineshape evaluation") {
    const std::vector<SpectralLine> one{{Transition::vacuum_upper, 0, 0.5, 0.3}};
    const auto at_center = evaluate_spectrum(one, {0.5}, 0.1, 1.0);
    CHECK(at_center[0] == doctest::Approx(0.3 / 0.1).epsilon(1e-14));

    const auto lines = transition_lines(vacuum_field(), kResonant, 0.0);
    const auto peak = evaluate_spectrum(lines, {1.0}, 0.1, 1.0);
    CHECK(peak[0] == doctest::Approx(2.5062344139650867).epsilon(1e-12));

    CHECK_THROWS_AS(evaluate_spectrum({}, {0.0}, 0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_spectrum(one, {}, 0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_spectrum(one, {0.0}, -0.1, 1.0), std::invalid_argument);
}

TEST_CASE("resonant uncorrected spectra are symmetric") {
    const auto grid = make_grid(-10.0, 10.0, 4001);
    for (const auto& dist : {coherent_distribution(1.0), thermal_distribution(1.0)}) {
        const auto result = compute_spectrum(dist, kResonant, 0.0, grid);
        const double scale = max_abs(result.values);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            worst = std::max(worst,
                             std::abs(result.values[i] - result.values[grid.size() - 1 - i]));
        CHECK(worst <= 1e-12 * scale);
    }
}

TEST_CASE("spectrum is linear in the distribution") {
    const auto grid = make_grid(-6.0, 6.0, 241);
    const auto d1 = custom_distribution({1.0});
    const auto d2 = custom_distribution({0.0, 1.0});
    const auto mix = custom_distribution({0.3, 0.7});
    const auto s1 = compute_spectrum(d1, kDetuned, 0.9, grid).values;
    const auto s2 = compute_spectrum(d2, kDetuned, 0.9, grid).values;
    const auto sm = compute_spectrum(mix, kDetuned, 0.9, grid).values;
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(sm[i] == doctest::Approx(0.3 * s1[i] + 0.7 * s2[i]).epsilon(1e-12));
}

TEST_CASE("line weights add up to the zero-delay correlation") {
    for (const auto& dist : {coherent_distribution(1.0), thermal_distribution(1.0)}) {
        for (double chi : {0.0, 0.9}) {
            const auto lines = transition_lines(dist, kDetuned, chi);
            double total = 0.0;
            for (const auto& line : lines) total += line.weight;
            const auto g0 = correlation_avg(0.0, dist, kDetuned, chi);
            CHECK(std::abs(total - g0.value.real()) <= 1e-12);
            CHECK(std::abs(g0.value.imag()) <= 1e-12);
        }
    }
}

TEST_CASE("peak finding") {
    const auto grid = make_grid(-10.0, 10.0, 4001);
    const double step = grid[1] - grid[0];

    const auto vac = compute_spectrum(vacuum_field(), kResonant, 0.0, grid);
    const auto peaks = peak_find(vac);
    REQUIRE(peaks.peaks.size() == 2);
    CHECK(std::abs(peaks.peaks[0].delta + 1.0) <= step);
    CHECK(std::abs(peaks.peaks[1].delta - 1.0) <= step);
    CHECK_FALSE(peaks.grid_coarse_warning);

    SpectrumResult single;
    single.grid = grid;
    single.lines = {{Transition::vacuum_upper, 0, 0.5, 1.0}};
    single.values = evaluate_spectrum(single.lines, grid, 0.1, 1.0);
    single.params = kResonant;
    const auto sp = peak_find(single);
    REQUIRE(sp.peaks.size() == 1);
    CHECK(std::abs(sp.peaks[0].delta - 0.5) <= step);

    // Peak set of a symmetric spectrum pairs up around zero.
    const auto big = compute_spectrum(coherent_distribution(10.0), kResonant, 0.0, grid);
    const auto bp = peak_find(big);
    REQUIRE(!bp.peaks.empty());
    for (const auto& peak : bp.peaks) {
        bool mirrored = false;
        for (const auto& other : bp.peaks)
            mirrored = mirrored || std::abs(other.delta + peak.delta) <= step + 1e-12;
        CHECK(mirrored);
    }

    const auto coarse = compute_spectrum(vacuum_field(), kResonant, 0.0, make_grid(-10, 10, 21));
    CHECK(peak_find(coarse).grid_coarse_warning);
}

TEST_CASE("asymmetry metric") {
    const auto grid = make_grid(-10.0, 10.0, 4001);
    const auto sym = compute_spectrum(coherent_distribution(1.0), kResonant, 0.0, grid);
    CHECK(std::abs(asymmetry_metric(sym)) <= 1e-10);

    SpectrumResult single;
    single.grid = make_grid(-50.0, 50.0, 20001);
    single.lines = {{Transition::vacuum_upper, 0, 0.5, 1.0}};
    single.values = evaluate_spectrum(single.lines, single.grid, 0.1, 1.0);
    single.params = kResonant;
    CHECK(std::abs(asymmetry_metric(single) - 0.5) < 2e-3);

    // Golden regression: sign and magnitude of the shift-induced asymmetry.
    const auto shifted =
        compute_spectrum(coherent_distribution(1.0), make_params(0.0, 0.0, 1.0, 0.1), 0.9, grid);
    CHECK(asymmetry_metric(shifted) ==
          doctest::Approx(2.4318923657005835).epsilon(1e-9));

    SpectrumResult off;
    off.grid = make_grid(0.0, 1.0, 11);
    off.values.assign(11, 1.0);
    off.params = kResonant;
    CHECK_THROWS_AS(asymmetry_metric(off), std::domain_error);
}
