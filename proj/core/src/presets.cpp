#include "jcfluor/presets.hpp"

#include <array>

namespace jcfluor::cli {

namespace {

struct PresetDef {
    const char* name;
    FieldKind field;
    double nbar;
    double delta;
    double chi;
};

// Rows: fig2 coherent nbar=1, fig3 coherent nbar=10, fig4 thermal nbar=1,
// fig5 thermal nbar=10. Columns: a (delta=0, chi=0), b (delta=0, chi=0.9),
// c (delta=0.3, chi=0), d (delta=0.3, chi=0.9). The *-prose variants use the
// alternate small detuning 0.03 instead of 0.3.
constexpr std::array<PresetDef, 24> kPresets{{
    {"fig2a", FieldKind::coherent, 1.0, 0.0, 0.0},
    {"fig2b", FieldKind::coherent, 1.0, 0.0, 0.9},
    {"fig2c", FieldKind::coherent, 1.0, 0.3, 0.0},
    {"fig2d", FieldKind::coherent, 1.0, 0.3, 0.9},
    {"fig3a", FieldKind::coherent, 10.0, 0.0, 0.0},
    {"fig3b", FieldKind::coherent, 10.0, 0.0, 0.9},
    {"fig3c", FieldKind::coherent, 10.0, 0.3, 0.0},
    {"fig3d", FieldKind::coherent, 10.0, 0.3, 0.9},
    {"fig4a", FieldKind::thermal, 1.0, 0.0, 0.0},
    {"fig4b", FieldKind::thermal, 1.0, 0.0, 0.9},
    {"fig4c", FieldKind::thermal, 1.0, 0.3, 0.0},
    {"fig4d", FieldKind::thermal, 1.0, 0.3, 0.9},
    {"fig5a", FieldKind::thermal, 10.0, 0.0, 0.0},
    {"fig5b", FieldKind::thermal, 10.0, 0.0, 0.9},
    {"fig5c", FieldKind::thermal, 10.0, 0.3, 0.0},
    {"fig5d", FieldKind::thermal, 10.0, 0.3, 0.9},
    {"fig2c-prose", FieldKind::coherent, 1.0, 0.03, 0.0},
    {"fig2d-prose", FieldKind::coherent, 1.0, 0.03, 0.9},
    {"fig3c-prose", FieldKind::coherent, 10.0, 0.03, 0.0},
    {"fig3d-prose", FieldKind::coherent, 10.0, 0.03, 0.9},
    {"fig4c-prose", FieldKind::thermal, 1.0, 0.03, 0.0},
    {"fig4d-prose", FieldKind::thermal, 1.0, 0.03, 0.9},
    {"fig5c-prose", FieldKind::thermal, 10.0, 0.03, 0.0},
    {"fig5d-prose", FieldKind::thermal, 10.0, 0.03, 0.9},
}};

std::string describe(const PresetDef& def) {
    std::string text(to_string(def.field));
    text += def.nbar == 1.0 ? " nbar=1" : " nbar=10";
    text += def.delta == 0.0 ? ", delta=0" : def.delta == 0.3 ? ", delta=0.3" : ", delta=0.03";
    text += def.chi == 0.0 ? ", chi=0" : ", chi=0.9";
    return text;
}

}  // namespace

const std::vector<PresetInfo>& preset_list() {
    static const std::vector<PresetInfo> list = [] {
        std::vector<PresetInfo> out;
        out.reserve(kPresets.size());
        for (const auto& def : kPresets) out.push_back({def.name, describe(def)});
        return out;
    }();
    return list;
}

void apply_preset(RunConfig& cfg, const std::string& name) {
    for (const auto& def : kPresets) {
        if (name != def.name) continue;
        cfg.field = def.field;
        cfg.nbar = def.nbar;
        cfg.custom_probs.clear();
        cfg.delta = def.delta;
        cfg.chi = def.chi;
        cfg.nearby.levels.clear();
        cfg.lambda_c = 1.0;
        cfg.gamma = 0.1;
        cfg.omega = 0.0;
        cfg.grid = GridSpec{};
        cfg.tail_tol = 1e-10;
        cfg.out_prefix = def.name;
        return;
    }
    throw ConfigError("preset", "unknown preset '" + name + "'; try --list-presets");
}

}  // namespace jcfluor::cli
