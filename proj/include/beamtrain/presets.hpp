#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "beamtrain/experiment.hpp"

namespace beamtrain {

// One experiment sweep within a preset. Single-config presets have exactly
// one panel; fig2-right bundles four (profile x array size).
struct ExperimentPanel {
    std::string label;
    ExperimentConfig config;
};

struct Preset {
    std::string name;
    std::string description;
    std::vector<ExperimentPanel> panels;
};

// Shipped presets: fig2-left (LOS gain vs SNR), fig2-middle (NLOS gain vs
// SNR), fig2-right (gain vs iteration count at 25 dB for 16- and 32-element
// arrays under both profiles). All run 1000 paired trials per cell.
const std::vector<Preset>& shipped_presets();

// nullptr when the name is unknown.
const Preset* find_preset(std::string_view name);

}  // namespace beamtrain
