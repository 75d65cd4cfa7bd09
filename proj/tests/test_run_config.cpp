#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "jcfluor/presets.hpp"
#include "jcfluor/run_config.hpp"

using namespace jcfluor;
using namespace jcfluor::cli;

namespace {
std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("cfg_") + name;
    std::ofstream out(path, std::ios::trunc);
    out << content;
    return path;
}
}  // namespace

TEST_CASE("keys are case-insensitive with interchangeable separators") {
    RunConfig cfg;
    assign(cfg, "NBar", "2.5");
    CHECK(cfg.nbar == 2.5);
    assign(cfg, "tail-tol", "1e-12");
    CHECK(cfg.tail_tol == 1e-12);
    assign(cfg, "TAIL_TOL", "1e-11");
    CHECK(cfg.tail_tol == 1e-11);
    assign(cfg, "weight-mode", "squared_literal");
    CHECK(cfg.weight_mode == spectrum::WeightMode::squared_literal);
    assign(cfg, "oracle", "verify");
    CHECK(cfg.oracle == OracleMode::verify);
    assign(cfg, "renormalize-probs", "yes");
    CHECK(cfg.renormalize_custom);
    assign(cfg, "renormalize", "false");
    CHECK_FALSE(cfg.renormalize_custom);
}

TEST_CASE("bad assignments carry the offending key") {
    RunConfig cfg;
    try {
        assign(cfg, "delta", "abc");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field == "delta");
    }
    try {
        assign(cfg, "no_such_key", "1");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field == "no_such_key");
    }
    CHECK_THROWS_AS(assign(cfg, "field", "glauber"), ConfigError);
    CHECK_THROWS_AS(assign(cfg, "oracle", "sometimes"), ConfigError);
    CHECK_THROWS_AS(assign(cfg, "grid", "1:2"), ConfigError);
    CHECK_THROWS_AS(assign(cfg, "nearby", "2.0"), ConfigError);
    CHECK_THROWS_AS(assign(cfg, "probs", ""), ConfigError);
}

TEST_CASE("structured value parsers") {
    const auto lv = parse_nearby("2.5:0.1,3:0.2");
    REQUIRE(lv.size() == 2);
    CHECK(lv.levels[0].omega_k == 2.5);
    CHECK(lv.levels[0].eta_k == 0.1);
    CHECK(lv.levels[1].omega_k == 3.0);

    const auto grid = parse_grid("-5:5:101");
    CHECK(grid.min == -5.0);
    CHECK(grid.max == 5.0);
    CHECK(grid.points == 101);

    const auto nums = parse_number_list("1, 2.5 ,3e-1", "probs");
    REQUIRE(nums.size() == 3);
    CHECK(nums[2] == 0.3);

    CHECK_THROWS_AS(parse_grid("-5:5:abc"), ConfigError);
    CHECK_THROWS_AS(parse_nearby("1:2:3"), ConfigError);
    CHECK_THROWS_AS(parse_number_list("1,,2", "probs"), ConfigError);
}

TEST_CASE("validation catches inconsistent configurations") {
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());

    SUBCASE("direct and derived shifts are exclusive") {
        cfg.chi = 0.5;
        cfg.nearby.levels.push_back({40.0, 2.0});
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("full oracle needs nearby levels") {
        cfg.oracle = OracleMode::full;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("custom needs probabilities and vice versa") {
        cfg.field = FieldKind::custom;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
        cfg.field = FieldKind::coherent;
        cfg.custom_probs = {0.5, 0.5};
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("negative mean occupation") {
        cfg.field = FieldKind::thermal;
        cfg.nbar = -1.0;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("degenerate grid") {
        cfg.grid.points = 1;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
        cfg.grid = GridSpec{};
        cfg.grid.min = 3.0;
        cfg.grid.max = -3.0;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("nearby below the transition") {
        cfg.nearby.levels.push_back({-1.0, 0.1});
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("bad detector width") {
        cfg.gamma = 0.0;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
}

TEST_CASE("derived quantities") {
    RunConfig cfg;
    cfg.delta = 0.3;
    cfg.omega = 2.0;
    CHECK(cfg.params().omega0 == doctest::Approx(2.3).epsilon(1e-15));
    CHECK(cfg.effective_chi() == 0.0);

    cfg.chi = 0.9;
    CHECK(cfg.effective_chi() == 0.9);

    cfg.chi.reset();
    cfg.omega = 0.0;
    cfg.delta = 0.0;
    cfg.nearby.levels.push_back({2.0, 0.1});
    CHECK(cfg.effective_chi() == doctest::Approx(0.01).epsilon(1e-14));

    cfg.field = FieldKind::custom;
    cfg.custom_probs = {0.45, 0.45};
    CHECK_THROWS_AS(cfg.distribution(), std::invalid_argument);
    cfg.renormalize_custom = true;
    CHECK(cfg.distribution().probs[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("config files in both formats") {
    const auto kv = write_temp("plain.cfg",
                               "# comment line\n"
                               "field = coherent\n"
                               "nbar = 2\n"
                               "Tail-Tol = 1e-9   # trailing comment\n"
                               "\n"
                               "grid = -4:4:81\n");
    RunConfig a = load_config_file(kv);
    CHECK(a.field == FieldKind::coherent);
    CHECK(a.nbar == 2.0);
    CHECK(a.tail_tol == 1e-9);
    CHECK(a.grid.points == 81);

    const auto js = write_temp("doc.json",
                               "{\"field\": \"thermal\", \"nbar\": 1, \"chi\": 0.9,\n"
                               " \"grid\": \"-2:2:41\"}\n");
    RunConfig b = load_config_file(js);
    CHECK(b.field == FieldKind::thermal);
    REQUIRE(b.chi.has_value());
    CHECK(*b.chi == 0.9);
    CHECK(b.grid.points == 41);

    const auto bad = write_temp("bad.cfg", "field coherent\n");
    CHECK_THROWS_AS(load_config_file(bad), ConfigError);
    CHECK_THROWS_AS(load_config_file("does_not_exist.cfg"), ConfigError);

    std::remove(kv.c_str());
    std::remove(js.c_str());
    std::remove(bad.c_str());
}

TEST_CASE("presets cover the figure grid and reset cleanly") {
    const auto& list = preset_list();
    CHECK(list.size() == 24);

    RunConfig cfg;
    cfg.gamma = 0.7;  // must be reset by the preset
    apply_preset(cfg, "fig2b");
    CHECK(cfg.field == FieldKind::coherent);
    CHECK(cfg.nbar == 1.0);
    CHECK(cfg.delta == 0.0);
    REQUIRE(cfg.chi.has_value());
    CHECK(*cfg.chi == 0.9);
    CHECK(cfg.gamma == 0.1);
    CHECK(cfg.out_prefix == "fig2b");
    CHECK_NOTHROW(cfg.validate());

    apply_preset(cfg, "fig5d");
    CHECK(cfg.field == FieldKind::thermal);
    CHECK(cfg.nbar == 10.0);
    CHECK(cfg.delta == 0.3);

    apply_preset(cfg, "fig4c-prose");
    CHECK(cfg.delta == 0.03);
    REQUIRE(cfg.chi.has_value());
    CHECK(*cfg.chi == 0.0);

    for (const auto& info : list) {
        RunConfig each;
        apply_preset(each, info.name);
        CHECK_NOTHROW(each.validate());
    }

    CHECK_THROWS_AS(apply_preset(cfg, "fig9z"), ConfigError);
}
