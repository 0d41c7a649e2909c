#include "beamtrain/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>
#include <utility>

namespace beamtrain {

namespace {

constexpr std::uint64_t kChannelStreamTag = 0x6368616e6e656cULL;  // "channel"
constexpr std::uint64_t kNoiseStreamTag = 0x6e6f697365ULL;        // "noise"

std::size_t cell_count(const ExperimentConfig& cfg) {
    return cfg.schemes.size() * cfg.epsilons.size() * cfg.snr_db_grid.size();
}

struct Cell {
    Scheme scheme;
    int epsilon;
    double snr_db;
};

Cell cell_at(const ExperimentConfig& cfg, std::size_t cell_index) {
    const std::size_t n_snr = cfg.snr_db_grid.size();
    const std::size_t n_eps = cfg.epsilons.size();
    const std::size_t snr_idx = cell_index % n_snr;
    const std::size_t eps_idx = (cell_index / n_snr) % n_eps;
    const std::size_t scheme_idx = cell_index / (n_snr * n_eps);
    return {cfg.schemes[scheme_idx], cfg.epsilons[eps_idx], cfg.snr_db_grid[snr_idx]};
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Runs all (cell, trial) tasks on a worker pool, storing each outcome in its
// slot. The sink is called once per task from worker threads; it must write
// only to the slot for its task index.
template <typename Sink>
void run_all_trials(const ExperimentConfig& cfg, unsigned threads, Sink&& sink) {
    const std::size_t n_cells = cell_count(cfg);
    const std::size_t n_tasks = n_cells * static_cast<std::size_t>(cfg.trials);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto worker = [&] {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= n_tasks) return;
            const std::size_t cell_index = task / static_cast<std::size_t>(cfg.trials);
            const int trial = static_cast<int>(task % static_cast<std::size_t>(cfg.trials));
            try {
                const Cell cell = cell_at(cfg, cell_index);
                const TrialSeeds seeds = derive_trial_seeds(cfg.master_seed, cell_index, trial);
                sink(task, cell, trial, seeds);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n_tasks);
                return;
            }
        }
    };

    const unsigned n_threads = std::min<std::size_t>(resolve_threads(threads), n_tasks);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
}

// Linear-domain means per cell, reduced in trial order.
std::pair<std::vector<CurvePoint>, int> reduce_curves(const ExperimentConfig& cfg,
                                                      const std::vector<TrialRecord>& records) {
    const std::size_t n_cells = cell_count(cfg);
    std::vector<CurvePoint> curves(n_cells);
    int failed = 0;
    for (std::size_t c = 0; c < n_cells; ++c) {
        const Cell cell = cell_at(cfg, c);
        double gain_sum = 0.0;
        double bound_sum = 0.0;
        int used = 0;
        for (int i = 0; i < cfg.trials; ++i) {
            const TrialRecord& rec = records[c * static_cast<std::size_t>(cfg.trials) +
                                             static_cast<std::size_t>(i)];
            if (rec.failed) {
                ++failed;
                continue;
            }
            gain_sum += rec.gain_linear;
            bound_sum += rec.svd_bound_linear;
            ++used;
        }
        CurvePoint& pt = curves[c];
        pt.scheme = cell.scheme;
        pt.epsilon = cell.epsilon;
        pt.snr_db = cell.snr_db;
        pt.trials = used;
        pt.mean_gain_db = used > 0 ? to_db(gain_sum / used) : 0.0;
        pt.mean_bound_db = used > 0 ? to_db(bound_sum / used) : 0.0;
    }
    return {std::move(curves), failed};
}

}  // namespace

void validate_config(const ExperimentConfig& cfg) {
    validate_profile(cfg.profile);
    if (cfg.m_tx == 0 || cfg.n_rx == 0)
        throw std::invalid_argument("ExperimentConfig: array sizes must be >= 1");
    if (cfg.schemes.empty()) throw std::invalid_argument("ExperimentConfig: schemes is empty");
    if (cfg.epsilons.empty()) throw std::invalid_argument("ExperimentConfig: epsilons is empty");
    for (int e : cfg.epsilons)
        if (e < 1) throw std::invalid_argument("ExperimentConfig: epsilon must be >= 1");
    if (cfg.snr_db_grid.empty())
        throw std::invalid_argument("ExperimentConfig: snr_db_grid is empty");
    for (double s : cfg.snr_db_grid)
        if (std::isnan(s)) throw std::invalid_argument("ExperimentConfig: snr_db is NaN");
    if (cfg.trials < 1) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
}

TrialSeeds derive_trial_seeds(std::uint64_t master_seed, std::size_t cell_index, int trial_index) {
    const std::uint64_t trial = static_cast<std::uint64_t>(trial_index);
    TrialSeeds seeds;
    seeds.channel_seed = mix_seed(mix_seed(master_seed, kChannelStreamTag), trial);
    seeds.noise_seed =
        mix_seed(mix_seed(mix_seed(master_seed, kNoiseStreamTag), cell_index), trial);
    return seeds;
}

double sigma2_from_snr_db(double snr_db) {
    if (std::isinf(snr_db) && snr_db > 0.0) return 0.0;
    return std::pow(10.0, -snr_db / 10.0);
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

double array_gain(const CxMatrix& h, const Awv& t, const Awv& r) {
    return std::norm(dot(r.weights, matvec(h, t.weights)));
}

TrialDetail run_trial_detailed(const ChannelProfile& profile, std::size_t m_tx, std::size_t n_rx,
                               Scheme scheme, int epsilon, double snr_db,
                               const TrialSeeds& seeds) {
    TrialDetail out;
    TrialRecord& rec = out.record;
    rec.scheme = scheme;
    rec.epsilon = epsilon;
    rec.snr_db = snr_db;

    Rng channel_rng(seeds.channel_seed);
    const MultipathChannel ch = sample_channel(profile, m_tx, n_rx, channel_rng);
    const CxMatrix h = render_channel(ch);

    TrainConfig cfg;
    cfg.scheme = scheme;
    cfg.epsilon = epsilon;
    cfg.sigma2 = sigma2_from_snr_db(snr_db);
    cfg.seed = seeds.noise_seed;

    try {
        rec.svd_bound_linear = [&] {
            const double s = principal_svd(h).sigma1;
            return s * s;
        }();
        out.result = train(h, cfg);
        rec.gain_linear = array_gain(h, out.result.t, out.result.r);
        rec.slots_used = out.result.slots_used;
    } catch (const DegenerateInputError&) {
        rec.failed = true;
    } catch (const NonConvergenceError&) {
        rec.failed = true;
    }
    return out;
}

TrialRecord run_trial(const ChannelProfile& profile, std::size_t m_tx, std::size_t n_rx,
                      Scheme scheme, int epsilon, double snr_db, const TrialSeeds& seeds) {
    return run_trial_detailed(profile, m_tx, n_rx, scheme, epsilon, snr_db, seeds).record;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads) {
    validate_config(cfg);
    ExperimentResult out;
    out.records.resize(cell_count(cfg) * static_cast<std::size_t>(cfg.trials));
    run_all_trials(cfg, threads, [&](std::size_t task, const Cell& cell, int trial,
                                     const TrialSeeds& seeds) {
        TrialRecord rec =
            run_trial(cfg.profile, cfg.m_tx, cfg.n_rx, cell.scheme, cell.epsilon, cell.snr_db, seeds);
        rec.trial_index = trial;
        out.records[task] = std::move(rec);
    });
    auto [curves, failed] = reduce_curves(cfg, out.records);
    out.curves = std::move(curves);
    out.failed_trials = failed;
    return out;
}

ExperimentDetail run_experiment_detailed(const ExperimentConfig& cfg, unsigned threads) {
    validate_config(cfg);
    ExperimentDetail out;
    out.trials.resize(cell_count(cfg) * static_cast<std::size_t>(cfg.trials));
    run_all_trials(cfg, threads, [&](std::size_t task, const Cell& cell, int trial,
                                     const TrialSeeds& seeds) {
        TrialDetail detail = run_trial_detailed(cfg.profile, cfg.m_tx, cfg.n_rx, cell.scheme,
                                                cell.epsilon, cell.snr_db, seeds);
        detail.record.trial_index = trial;
        out.trials[task] = std::move(detail);
    });
    std::vector<TrialRecord> records(out.trials.size());
    for (std::size_t i = 0; i < out.trials.size(); ++i) records[i] = out.trials[i].record;
    auto [curves, failed] = reduce_curves(cfg, records);
    out.curves = std::move(curves);
    out.failed_trials = failed;
    return out;
}

std::string format_g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_curves_csv(std::ostream& os, const std::vector<CurvePoint>& points) {
    os << "scheme,epsilon,snr_db,mean_gain_db,mean_bound_db,trials\n";
    for (const CurvePoint& p : points)
        os << scheme_name(p.scheme) << ',' << p.epsilon << ',' << format_g6(p.snr_db) << ','
           << format_g6(p.mean_gain_db) << ',' << format_g6(p.mean_bound_db) << ',' << p.trials
           << '\n';
}

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
    os << "trial,scheme,epsilon,snr_db,gain_linear,svd_bound_linear,slots_used\n";
    for (const TrialRecord& r : records)
        os << r.trial_index << ',' << scheme_name(r.scheme) << ',' << r.epsilon << ','
           << format_g6(r.snr_db) << ',' << format_g6(r.gain_linear) << ','
           << format_g6(r.svd_bound_linear) << ',' << r.slots_used << '\n';
}

}  // namespace beamtrain
