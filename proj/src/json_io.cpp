#include "beamtrain/json_io.hpp"

#include <cmath>
#include <limits>

namespace beamtrain {

namespace {

json weights_to_json(const CxVector& w) {
    json arr = json::array();
    for (const Cx& e : w) arr.push_back(json{{"re", e.real()}, {"im", e.imag()}});
    return arr;
}

CxVector weights_from_json(const json& arr) {
    CxVector w;
    w.reserve(arr.size());
    for (const json& e : arr) w.emplace_back(e.at("re").get<double>(), e.at("im").get<double>());
    return w;
}

double snr_entry_from_json(const json& e) {
    if (e.is_string()) {
        const auto s = e.get<std::string>();
        if (s == "inf" || s == "+inf" || s == "Inf")
            return std::numeric_limits<double>::infinity();
        throw std::invalid_argument("snr_db_grid: unrecognized entry '" + s + "'");
    }
    return e.get<double>();
}

// JSON has no literal for infinity; noiseless cells serialize as "inf".
json snr_to_json(double snr_db) {
    if (std::isinf(snr_db) && snr_db > 0.0) return "inf";
    return snr_db;
}

}  // namespace

void to_json(json& j, const MultipathChannel& ch) {
    json mpcs = json::array();
    for (const Mpc& mpc : ch.mpcs)
        mpcs.push_back(json{{"re", mpc.lambda.real()},
                            {"im", mpc.lambda.imag()},
                            {"omega_t", mpc.omega_t},
                            {"omega_r", mpc.omega_r}});
    j = json{{"mpcs", std::move(mpcs)}, {"m_tx", ch.m_tx}, {"n_rx", ch.n_rx}};
}

void from_json(const json& j, MultipathChannel& ch) {
    ch.mpcs.clear();
    for (const json& e : j.at("mpcs")) {
        Mpc mpc;
        mpc.lambda = Cx{e.at("re").get<double>(), e.at("im").get<double>()};
        mpc.omega_t = e.at("omega_t").get<double>();
        mpc.omega_r = e.at("omega_r").get<double>();
        ch.mpcs.push_back(mpc);
    }
    ch.m_tx = j.at("m_tx").get<std::size_t>();
    ch.n_rx = j.at("n_rx").get<std::size_t>();
}

void to_json(json& j, const TrainResult& result) {
    j = json{{"t", weights_to_json(result.t.weights)},
             {"r", weights_to_json(result.r.weights)},
             {"slots_used", result.slots_used}};
}

void from_json(const json& j, TrainResult& result) {
    result.t.weights = weights_from_json(j.at("t"));
    result.r.weights = weights_from_json(j.at("r"));
    result.slots_used = j.at("slots_used").get<std::size_t>();
}

void to_json(json& j, const ExperimentConfig& cfg) {
    json snrs = json::array();
    for (double s : cfg.snr_db_grid) snrs.push_back(snr_to_json(s));
    json schemes = json::array();
    for (Scheme s : cfg.schemes) schemes.push_back(scheme_name(s));
    j = json{{"profile",
              json{{"kind", cfg.profile.kind == ProfileKind::Los ? "los" : "nlos"},
                   {"powers", cfg.profile.powers}}},
             {"m_tx", cfg.m_tx},
             {"n_rx", cfg.n_rx},
             {"schemes", std::move(schemes)},
             {"epsilons", cfg.epsilons},
             {"snr_db_grid", std::move(snrs)},
             {"trials", cfg.trials},
             {"master_seed", cfg.master_seed}};
}

void from_json(const json& j, ExperimentConfig& cfg) {
    const json& prof = j.at("profile");
    if (prof.is_string()) {
        const auto kind = prof.get<std::string>();
        if (kind == "los")
            cfg.profile = los_profile();
        else if (kind == "nlos")
            cfg.profile = nlos_profile();
        else
            throw std::invalid_argument("profile: unknown kind '" + kind + "'");
    } else {
        const auto kind = prof.at("kind").get<std::string>();
        if (kind == "los")
            cfg.profile.kind = ProfileKind::Los;
        else if (kind == "nlos")
            cfg.profile.kind = ProfileKind::Nlos;
        else
            throw std::invalid_argument("profile.kind: unknown kind '" + kind + "'");
        if (prof.contains("powers"))
            cfg.profile.powers = prof.at("powers").get<std::vector<double>>();
        else
            cfg.profile.powers = (cfg.profile.kind == ProfileKind::Los ? los_profile() : nlos_profile()).powers;
    }
    cfg.m_tx = j.at("m_tx").get<std::size_t>();
    cfg.n_rx = j.at("n_rx").get<std::size_t>();
    cfg.schemes.clear();
    for (const json& s : j.at("schemes")) cfg.schemes.push_back(scheme_from_name(s.get<std::string>()));
    cfg.epsilons = j.at("epsilons").get<std::vector<int>>();
    cfg.snr_db_grid.clear();
    for (const json& s : j.at("snr_db_grid")) cfg.snr_db_grid.push_back(snr_entry_from_json(s));
    cfg.trials = j.at("trials").get<int>();
    cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
}

void to_json(json& j, const CurvePoint& p) {
    j = json{{"scheme", scheme_name(p.scheme)},   {"epsilon", p.epsilon},
             {"snr_db", snr_to_json(p.snr_db)},   {"mean_gain_db", p.mean_gain_db},
             {"mean_bound_db", p.mean_bound_db},  {"trials", p.trials}};
}

void to_json(json& j, const TrialRecord& r) {
    j = json{{"trial", r.trial_index},
             {"scheme", scheme_name(r.scheme)},
             {"epsilon", r.epsilon},
             {"snr_db", snr_to_json(r.snr_db)},
             {"gain_linear", r.gain_linear},
             {"svd_bound_linear", r.svd_bound_linear},
             {"slots_used", r.slots_used},
             {"failed", r.failed}};
}

}  // namespace beamtrain
