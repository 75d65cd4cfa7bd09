#pragma once

#include <string>
#include <vector>

#include "jcfluor/run_config.hpp"

namespace jcfluor::cli {

struct PresetInfo {
    std::string name;
    std::string description;
};

// fig2..fig5 scan {coherent, thermal} x {nbar 1, 10}; letters a..d scan the
// (delta, chi) combinations. The *-prose variants swap delta 0.3 for 0.03.
const std::vector<PresetInfo>& preset_list();

// Overwrites the physics fields and sets out_prefix to the preset name;
// throws ConfigError for unknown names.
void apply_preset(RunConfig& cfg, const std::string& name);

}  // namespace jcfluor::cli
