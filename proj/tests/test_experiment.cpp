#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "beamtrain/experiment.hpp"
#include "beamtrain/json_io.hpp"
#include "test_util.hpp"

using namespace beamtrain;
using namespace beamtrain::testutil;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.profile = nlos_profile();
    cfg.m_tx = 8;
    cfg.n_rx = 8;
    cfg.schemes = {Scheme::Sgv, Scheme::Stv};
    cfg.epsilons = {1, 2};
    cfg.snr_db_grid = {10.0, kInf};
    cfg.trials = 12;
    cfg.master_seed = 99;
    return cfg;
}

bool same_record(const TrialRecord& a, const TrialRecord& b) {
    return a.trial_index == b.trial_index && a.scheme == b.scheme && a.epsilon == b.epsilon &&
           a.snr_db == b.snr_db && a.gain_linear == b.gain_linear &&
           a.svd_bound_linear == b.svd_bound_linear && a.slots_used == b.slots_used &&
           a.failed == b.failed;
}

}  // namespace

TEST_CASE("array_gain basics") {
    const CxMatrix eye = CxMatrix::identity(3);
    Awv e1{CxVector(3), false};
    e1.weights[0] = Cx{1, 0};
    CHECK(array_gain(eye, e1, e1) == doctest::Approx(1.0).epsilon(1e-14));

    // Steering the single component exactly achieves N M |lambda|^2.
    Rng rng(5);
    const Cx lambda = rng.complex_gaussian(1.0);
    MultipathChannel ch;
    ch.m_tx = 6;
    ch.n_rx = 4;
    ch.mpcs = {Mpc{lambda, 0.3, -0.6}};
    const CxMatrix h = render_channel(ch);
    const Awv t{steering_vector(0.3, 6), true};
    const Awv r{steering_vector(-0.6, 4), true};
    const double expect = 24.0 * std::norm(lambda);
    CHECK(std::abs(array_gain(h, t, r) - expect) <= 1e-10 * expect);
}

TEST_CASE("array_gain never exceeds the principal singular value squared") {
    Rng rng(6);
    for (int i = 0; i < 20; ++i) {
        const CxMatrix h = render_channel(sample_channel(nlos_profile(), 8, 8, rng));
        const double bound = [&] {
            const double s = principal_svd(h).sigma1;
            return s * s;
        }();
        const Awv t{random_unit_vector(8, 100 + i), false};
        const Awv r{random_unit_vector(8, 200 + i), false};
        CHECK(array_gain(h, t, r) <= bound * (1.0 + 1e-8));
    }
}

TEST_CASE("sigma2_from_snr_db") {
    CHECK(sigma2_from_snr_db(0.0) == doctest::Approx(1.0));
    CHECK(sigma2_from_snr_db(25.0) == doctest::Approx(std::pow(10.0, -2.5)).epsilon(1e-15));
    CHECK(sigma2_from_snr_db(kInf) == 0.0);
}

TEST_CASE("seed derivation pairs channels across cells and separates noise") {
    const std::uint64_t master = 7;
    const TrialSeeds a = derive_trial_seeds(master, 0, 3);
    const TrialSeeds b = derive_trial_seeds(master, 5, 3);
    CHECK(a.channel_seed == b.channel_seed);
    CHECK(a.noise_seed != b.noise_seed);

    const TrialSeeds c = derive_trial_seeds(master, 0, 4);
    CHECK(c.channel_seed != a.channel_seed);

    // Deterministic.
    const TrialSeeds again = derive_trial_seeds(master, 5, 3);
    CHECK(again.channel_seed == b.channel_seed);
    CHECK(again.noise_seed == b.noise_seed);
}

TEST_CASE("run_trial is deterministic and respects the bound") {
    const TrialSeeds seeds = derive_trial_seeds(11, 2, 5);
    const TrialRecord a = run_trial(nlos_profile(), 8, 8, Scheme::Stv, 2, 20.0, seeds);
    const TrialRecord b = run_trial(nlos_profile(), 8, 8, Scheme::Stv, 2, 20.0, seeds);
    CHECK(same_record(a, b));
    CHECK_FALSE(a.failed);
    CHECK(a.slots_used == 2 * 16);
    CHECK(a.gain_linear <= a.svd_bound_linear * (1.0 + 1e-8));
    CHECK(a.gain_linear > 0.0);
}

TEST_CASE("noiseless LOS STV closes in on the bound as iterations grow") {
    // One iteration leaves a spread of gaps (the weak paths corrupt the first
    // signature estimate); by two iterations most trials sit within 0.5 dB.
    const int trials = 400;
    int within_eps1 = 0;
    int within_eps2 = 0;
    std::vector<double> gaps1;
    for (int i = 0; i < trials; ++i) {
        const TrialSeeds seeds = derive_trial_seeds(21, 0, i);
        const TrialRecord r1 = run_trial(los_profile(), 16, 16, Scheme::Stv, 1, kInf, seeds);
        const TrialRecord r2 = run_trial(los_profile(), 16, 16, Scheme::Stv, 2, kInf, seeds);
        REQUIRE_FALSE(r1.failed);
        const double gap1 = to_db(r1.svd_bound_linear) - to_db(r1.gain_linear);
        const double gap2 = to_db(r2.svd_bound_linear) - to_db(r2.gain_linear);
        gaps1.push_back(gap1);
        if (gap1 <= 0.5) ++within_eps1;
        if (gap2 <= 0.5) ++within_eps2;
    }
    std::sort(gaps1.begin(), gaps1.end());
    const double median1 = gaps1[gaps1.size() / 2];
    CHECK(median1 <= 1.5);
    CHECK(within_eps1 >= trials * 30 / 100);
    CHECK(within_eps2 >= trials * 90 / 100);
}

TEST_CASE("run_experiment with one trial reproduces the single record") {
    ExperimentConfig cfg;
    cfg.profile = los_profile();
    cfg.m_tx = 8;
    cfg.n_rx = 8;
    cfg.schemes = {Scheme::Stv};
    cfg.epsilons = {2};
    cfg.snr_db_grid = {15.0};
    cfg.trials = 1;
    cfg.master_seed = 31;
    const ExperimentResult res = run_experiment(cfg, 1);
    REQUIRE(res.curves.size() == 1);
    REQUIRE(res.records.size() == 1);
    CHECK(res.curves[0].mean_gain_db == to_db(res.records[0].gain_linear));
    CHECK(res.curves[0].mean_bound_db == to_db(res.records[0].svd_bound_linear));
    CHECK(res.curves[0].trials == 1);
}

TEST_CASE("channels are paired across cells") {
    const ExperimentConfig cfg = small_config();
    const std::size_t n_cells = cfg.schemes.size() * cfg.epsilons.size() * cfg.snr_db_grid.size();
    for (int trial : {0, 5, 11}) {
        json reference;
        for (std::size_t cell = 0; cell < n_cells; ++cell) {
            const TrialSeeds seeds = derive_trial_seeds(cfg.master_seed, cell, trial);
            Rng rng(seeds.channel_seed);
            const json j = sample_channel(cfg.profile, cfg.m_tx, cfg.n_rx, rng);
            if (cell == 0)
                reference = j;
            else
                CHECK(j == reference);
        }
    }
}

TEST_CASE("mean bound is identical across cells and failures are absent") {
    const ExperimentResult res = run_experiment(small_config(), 2);
    CHECK(res.failed_trials == 0);
    for (const CurvePoint& p : res.curves) {
        CHECK(p.mean_bound_db == res.curves[0].mean_bound_db);
        CHECK(p.trials == 12);
    }
    for (const TrialRecord& r : res.records) {
        CHECK(r.slots_used == static_cast<std::size_t>(r.epsilon) * 16);
        CHECK(r.gain_linear <= r.svd_bound_linear * (1.0 + 1e-8));
    }
}

TEST_CASE("noiseless SGV mean gain is non-decreasing in the iteration count") {
    ExperimentConfig cfg;
    cfg.profile = nlos_profile();
    cfg.m_tx = 8;
    cfg.n_rx = 8;
    cfg.schemes = {Scheme::Sgv};
    cfg.epsilons = {1, 2, 3, 4, 5};
    cfg.snr_db_grid = {kInf};
    cfg.trials = 25;
    cfg.master_seed = 47;
    const ExperimentResult res = run_experiment(cfg, 2);
    REQUIRE(res.curves.size() == 5);
    for (std::size_t i = 1; i < res.curves.size(); ++i)
        CHECK(res.curves[i].mean_gain_db >= res.curves[i - 1].mean_gain_db - 1e-12);
}

TEST_CASE("results are identical for any worker count") {
    const ExperimentConfig cfg = small_config();
    const ExperimentResult serial = run_experiment(cfg, 1);
    const ExperimentResult parallel = run_experiment(cfg, 4);
    REQUIRE(serial.records.size() == parallel.records.size());
    for (std::size_t i = 0; i < serial.records.size(); ++i)
        CHECK(same_record(serial.records[i], parallel.records[i]));

    std::ostringstream a, b;
    write_curves_csv(a, serial.curves);
    write_curves_csv(b, parallel.curves);
    CHECK(a.str() == b.str());
}

TEST_CASE("run_experiment_detailed keeps the trained AWVs") {
    const ExperimentConfig cfg = small_config();
    const ExperimentDetail detail = run_experiment_detailed(cfg, 2);
    REQUIRE(detail.trials.size() == 8 * 12);
    for (const TrialDetail& d : detail.trials) {
        if (d.record.failed) continue;
        CHECK(d.result.t.weights.size() == 8);
        CHECK(d.result.r.weights.size() == 8);
        CHECK(d.result.t.ca_constrained == (d.record.scheme == Scheme::Stv));
    }
}

TEST_CASE("curve CSV format") {
    CurvePoint p;
    p.scheme = Scheme::Sgv;
    p.epsilon = 2;
    p.snr_db = 25.0;
    p.mean_gain_db = 22.123456789;
    p.mean_bound_db = 23.0;
    p.trials = 1000;
    std::ostringstream os;
    write_curves_csv(os, {p});
    CHECK(os.str() ==
          "scheme,epsilon,snr_db,mean_gain_db,mean_bound_db,trials\n"
          "sgv,2,25,22.1235,23,1000\n");

    CHECK(format_g6(0.5) == "0.5");
    CHECK(format_g6(kInf) == "inf");
}

TEST_CASE("trial CSV format") {
    TrialRecord r;
    r.trial_index = 3;
    r.scheme = Scheme::Stv;
    r.epsilon = 1;
    r.snr_db = kInf;
    r.gain_linear = 196.9152;
    r.svd_bound_linear = 200.0;
    r.slots_used = 32;
    std::ostringstream os;
    write_trials_csv(os, {r});
    CHECK(os.str() ==
          "trial,scheme,epsilon,snr_db,gain_linear,svd_bound_linear,slots_used\n"
          "3,stv,1,inf,196.915,200,32\n");
}

TEST_CASE("experiment config JSON round trip") {
    const ExperimentConfig cfg = small_config();
    const json j = cfg;
    const auto back = j.get<ExperimentConfig>();
    CHECK(back.profile.kind == cfg.profile.kind);
    CHECK(back.profile.powers == cfg.profile.powers);
    CHECK(back.m_tx == cfg.m_tx);
    CHECK(back.schemes == cfg.schemes);
    CHECK(back.epsilons == cfg.epsilons);
    CHECK(back.snr_db_grid == cfg.snr_db_grid);
    CHECK(back.trials == cfg.trials);
    CHECK(back.master_seed == cfg.master_seed);
    CHECK(j.at("snr_db_grid")[1] == "inf");
}

TEST_CASE("experiment config JSON accepts profile shorthand and rejects bad values") {
    const json good = {
        {"profile", "los"},        {"m_tx", 4},       {"n_rx", 4},
        {"schemes", {"sgv"}},      {"epsilons", {1}}, {"snr_db_grid", {10.0, "inf"}},
        {"trials", 2},             {"master_seed", 5}};
    const auto cfg = good.get<ExperimentConfig>();
    CHECK(cfg.profile.kind == ProfileKind::Los);
    CHECK(cfg.profile.powers == los_profile().powers);
    CHECK(std::isinf(cfg.snr_db_grid[1]));

    json bad = good;
    bad["schemes"] = {"nope"};
    CHECK_THROWS(bad.get<ExperimentConfig>());

    ExperimentConfig invalid = small_config();
    invalid.trials = 0;
    CHECK_THROWS_AS(validate_config(invalid), std::invalid_argument);
    invalid = small_config();
    invalid.epsilons = {0};
    CHECK_THROWS_AS(validate_config(invalid), std::invalid_argument);
    invalid = small_config();
    invalid.snr_db_grid.clear();
    CHECK_THROWS_AS(validate_config(invalid), std::invalid_argument);
}
