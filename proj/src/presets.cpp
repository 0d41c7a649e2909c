#include "beamtrain/presets.hpp"

namespace beamtrain {

namespace {

ExperimentConfig panel_config(const ChannelProfile& profile, std::size_t m, std::size_t n,
                              std::vector<int> epsilons, std::vector<double> snr_db_grid) {
    ExperimentConfig cfg;
    cfg.profile = profile;
    cfg.m_tx = m;
    cfg.n_rx = n;
    cfg.schemes = {Scheme::Sgv, Scheme::Stv};
    cfg.epsilons = std::move(epsilons);
    cfg.snr_db_grid = std::move(snr_db_grid);
    cfg.trials = 1000;
    cfg.master_seed = 1;
    return cfg;
}

std::vector<Preset> build_presets() {
    const std::vector<double> snr_sweep{0, 5, 10, 15, 20, 25, 30};
    const std::vector<int> eps_small{1, 2, 3};
    const std::vector<int> eps_sweep{1, 2, 3, 4, 5, 6, 7, 8};

    std::vector<Preset> presets;
    presets.push_back(Preset{
        "fig2-left",
        "LOS channel, 16x16: mean array gain vs transmit SNR for 1-3 iterations",
        {{"los-m16", panel_config(los_profile(), 16, 16, eps_small, snr_sweep)}}});
    presets.push_back(Preset{
        "fig2-middle",
        "NLOS channel, 16x16: mean array gain vs transmit SNR for 1-3 iterations",
        {{"nlos-m16", panel_config(nlos_profile(), 16, 16, eps_small, snr_sweep)}}});
    presets.push_back(Preset{
        "fig2-right",
        "Convergence at 25 dB: mean array gain vs iteration count, 16x16 and 32x32",
        {{"los-m16", panel_config(los_profile(), 16, 16, eps_sweep, {25})},
         {"nlos-m16", panel_config(nlos_profile(), 16, 16, eps_sweep, {25})},
         {"los-m32", panel_config(los_profile(), 32, 32, eps_sweep, {25})},
         {"nlos-m32", panel_config(nlos_profile(), 32, 32, eps_sweep, {25})}}});
    return presets;
}

}  // namespace

const std::vector<Preset>& shipped_presets() {
    static const std::vector<Preset> presets = build_presets();
    return presets;
}

const Preset* find_preset(std::string_view name) {
    for (const Preset& p : shipped_presets())
        if (p.name == name) return &p;
    return nullptr;
}

}  // namespace beamtrain
