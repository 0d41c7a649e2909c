#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "beamtrain/channel.hpp"
#include "beamtrain/training.hpp"

namespace beamtrain {

// One Monte Carlo sweep: every (scheme, epsilon, snr) cell is evaluated over
// `trials` channel realizations, paired across cells.
struct ExperimentConfig {
    ChannelProfile profile;
    std::size_t m_tx = 16;
    std::size_t n_rx = 16;
    std::vector<Scheme> schemes;
    std::vector<int> epsilons;
    std::vector<double> snr_db_grid;  // transmit SNR in dB; +inf means noiseless
    int trials = 1000;
    std::uint64_t master_seed = 1;
};

void validate_config(const ExperimentConfig& cfg);

struct TrialRecord {
    int trial_index = 0;
    Scheme scheme = Scheme::Sgv;
    int epsilon = 0;
    double snr_db = 0.0;
    double gain_linear = 0.0;       // |r^H h t|^2
    double svd_bound_linear = 0.0;  // sigma1^2 of the same channel
    std::size_t slots_used = 0;
    bool failed = false;  // degenerate measurement or SVD non-convergence
};

struct CurvePoint {
    Scheme scheme = Scheme::Sgv;
    int epsilon = 0;
    double snr_db = 0.0;
    double mean_gain_db = 0.0;
    double mean_bound_db = 0.0;
    int trials = 0;  // records included in the means
};

// Seed material for one trial. Channel seeds depend only on the trial index,
// so every (scheme, epsilon, snr) cell sees the same channel realizations
// (paired comparison); noise seeds additionally mix in the cell index so the
// noise streams differ across cells.
struct TrialSeeds {
    std::uint64_t channel_seed = 0;
    std::uint64_t noise_seed = 0;
};

// Cells are enumerated scheme-major, then epsilon, then snr:
//   cell_index = (scheme_idx * n_epsilons + epsilon_idx) * n_snrs + snr_idx.
// Derivation (mix_seed = chained splitmix64):
//   channel_seed = mix(mix(master, kChannelStreamTag), trial)
//   noise_seed   = mix(mix(mix(master, kNoiseStreamTag), cell), trial)
TrialSeeds derive_trial_seeds(std::uint64_t master_seed, std::size_t cell_index, int trial_index);

// 10^(-snr/10); an infinite SNR maps to exactly zero noise power.
double sigma2_from_snr_db(double snr_db);
double to_db(double linear);

// Array gain delivered by the AWV pair: |r^H h t|^2.
double array_gain(const CxMatrix& h, const Awv& t, const Awv& r);

// Samples one channel, runs the scheme, and records the achieved gain, the
// noiseless SVD bound of the same matrix, and the slot cost. Degenerate
// measurements and SVD non-convergence yield a record with failed = true
// instead of propagating.
TrialRecord run_trial(const ChannelProfile& profile, std::size_t m_tx, std::size_t n_rx,
                      Scheme scheme, int epsilon, double snr_db, const TrialSeeds& seeds);

struct TrialDetail {
    TrialRecord record;
    TrainResult result;
};

// As run_trial but also returns the trained AWVs.
TrialDetail run_trial_detailed(const ChannelProfile& profile, std::size_t m_tx, std::size_t n_rx,
                               Scheme scheme, int epsilon, double snr_db, const TrialSeeds& seeds);

struct ExperimentResult {
    std::vector<CurvePoint> curves;    // one per cell, in cell order
    std::vector<TrialRecord> records;  // cell-major, trial-minor
    int failed_trials = 0;
};

struct ExperimentDetail {
    std::vector<CurvePoint> curves;
    std::vector<TrialDetail> trials;  // cell-major, trial-minor
    int failed_trials = 0;
};

// Runs every cell over `trials` paired realizations. Trials execute on
// `threads` workers (0 = hardware concurrency); records land in slots indexed
// by (cell, trial) and means are reduced in trial order afterwards, so the
// output is bit-identical for any thread count. Means are taken in the linear
// domain and reported in dB; failed trials are excluded and counted.
ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads = 0);

// As run_experiment but retains the per-trial AWVs.
ExperimentDetail run_experiment_detailed(const ExperimentConfig& cfg, unsigned threads = 0);

// Shortest round-trippable representation with %.6g formatting.
std::string format_g6(double v);

// One row per CurvePoint: scheme,epsilon,snr_db,mean_gain_db,mean_bound_db,trials
void write_curves_csv(std::ostream& os, const std::vector<CurvePoint>& points);

// One row per TrialRecord: trial,scheme,epsilon,snr_db,gain_linear,svd_bound_linear,slots_used
void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records);

}  // namespace beamtrain
