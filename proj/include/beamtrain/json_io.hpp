#pragma once

#include <json.hpp>

#include "beamtrain/channel.hpp"
#include "beamtrain/experiment.hpp"
#include "beamtrain/training.hpp"

namespace beamtrain {

using nlohmann::json;

// Channel fixture: {"mpcs": [{"re", "im", "omega_t", "omega_r"}], "m_tx", "n_rx"}
void to_json(json& j, const MultipathChannel& ch);
void from_json(const json& j, MultipathChannel& ch);

// Training fixture: {"t": [{"re", "im"}], "r": [{"re", "im"}], "slots_used"}
void to_json(json& j, const TrainResult& result);
void from_json(const json& j, TrainResult& result);

// Experiment config mirrors ExperimentConfig field for field.
//   profile: "los" | "nlos" | {"kind": ..., "powers": [...]} (powers optional)
//   snr_db_grid entries: numbers, or the string "inf" for noiseless
void to_json(json& j, const ExperimentConfig& cfg);
void from_json(const json& j, ExperimentConfig& cfg);

void to_json(json& j, const CurvePoint& p);
void to_json(json& j, const TrialRecord& r);

}  // namespace beamtrain
