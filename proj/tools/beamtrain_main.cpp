// beamtrain CLI: Monte Carlo experiments and single-shot trainings for the
// SGV and STV joint beamforming-training schemes over synthetic multipath
// channels. Results go to CSV or JSON; all runs are reproducible from seeds.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "beamtrain/json_io.hpp"
#include "beamtrain/presets.hpp"

namespace {

using namespace beamtrain;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SelectArgs {
    std::string preset;
    std::string config_path;
    std::vector<std::string> sets;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int trials = 0;
    bool trials_given = false;
};

struct OutputArgs {
    std::string output = "results.csv";
    std::string format = "csv";
    std::string per_trial_path;
};

double parse_snr_db(const std::string& text) {
    if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("bad snr value '" + text + "'");
    return v;
}

// Applies one dotted-key override ("trials=100", "profile.kind=nlos") to the
// JSON form of a config. Values parse as JSON when possible, else as strings.
void apply_set(json& doc, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("--set expects key=value, got '" + spec + "'");
    const std::string key = spec.substr(0, eq);
    const std::string value = spec.substr(eq + 1);

    json* node = &doc;
    std::size_t begin = 0;
    for (;;) {
        const auto dot = key.find('.', begin);
        const std::string part = key.substr(begin, dot - begin);
        if (part.empty()) throw std::invalid_argument("--set key has an empty segment: " + key);
        if (dot == std::string::npos) {
            json parsed = json::parse(value, nullptr, false);
            (*node)[part] = parsed.is_discarded() ? json(value) : parsed;
            return;
        }
        node = &(*node)[part];
        begin = dot + 1;
    }
}

std::vector<ExperimentPanel> resolve_panels(const SelectArgs& args) {
    if (args.preset.empty() == args.config_path.empty())
        throw std::invalid_argument("exactly one of --preset or --config is required");

    std::vector<ExperimentPanel> panels;
    if (!args.preset.empty()) {
        const Preset* preset = find_preset(args.preset);
        if (preset == nullptr) {
            std::string names;
            for (const Preset& p : shipped_presets()) names += " " + p.name;
            throw std::invalid_argument("unknown preset '" + args.preset + "'; available:" + names);
        }
        panels = preset->panels;
    } else {
        std::ifstream in(args.config_path);
        if (!in) throw IoError("cannot open config file: " + args.config_path);
        json doc = json::parse(in);  // throws with byte-offset diagnostics
        ExperimentPanel panel;
        panel.config = doc.get<ExperimentConfig>();
        panels.push_back(std::move(panel));
    }

    for (ExperimentPanel& panel : panels) {
        json doc = panel.config;
        for (const std::string& s : args.sets) apply_set(doc, s);
        if (args.trials_given) doc["trials"] = args.trials;
        if (args.seed_given) doc["master_seed"] = args.seed;
        panel.config = doc.get<ExperimentConfig>();
        validate_config(panel.config);
        panel.label = std::string(panel.config.profile.kind == ProfileKind::Los ? "los" : "nlos") +
                      "-m" + std::to_string(panel.config.m_tx);
    }
    return panels;
}

unsigned threads_from_env() {
    const char* raw = std::getenv("BEAMTRAIN_THREADS");
    if (raw == nullptr || *raw == '\0') return 0;
    char* end = nullptr;
    const unsigned long v = std::strtoul(raw, &end, 10);
    if (end == raw || *end != '\0') {
        std::cerr << "warning: ignoring unparsable BEAMTRAIN_THREADS='" << raw << "'\n";
        return 0;
    }
    return static_cast<unsigned>(v);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    out << content;
    if (!out) throw IoError("failed writing output file: " + path);
}

std::string bundle_curves_csv(const std::vector<ExperimentPanel>& panels,
                              const std::vector<ExperimentResult>& results) {
    std::ostringstream os;
    os << "panel,scheme,epsilon,snr_db,mean_gain_db,mean_bound_db,trials\n";
    for (std::size_t i = 0; i < panels.size(); ++i)
        for (const CurvePoint& p : results[i].curves)
            os << panels[i].label << ',' << scheme_name(p.scheme) << ',' << p.epsilon << ','
               << format_g6(p.snr_db) << ',' << format_g6(p.mean_gain_db) << ','
               << format_g6(p.mean_bound_db) << ',' << p.trials << '\n';
    return os.str();
}

std::string bundle_trials_csv(const std::vector<ExperimentPanel>& panels,
                              const std::vector<ExperimentResult>& results) {
    std::ostringstream os;
    os << "panel,trial,scheme,epsilon,snr_db,gain_linear,svd_bound_linear,slots_used\n";
    for (std::size_t i = 0; i < panels.size(); ++i)
        for (const TrialRecord& r : results[i].records)
            os << panels[i].label << ',' << r.trial_index << ',' << scheme_name(r.scheme) << ','
               << r.epsilon << ',' << format_g6(r.snr_db) << ',' << format_g6(r.gain_linear)
               << ',' << format_g6(r.svd_bound_linear) << ',' << r.slots_used << '\n';
    return os.str();
}

void print_summary(const std::vector<ExperimentPanel>& panels,
                   const std::vector<ExperimentResult>& results) {
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const ExperimentResult& res = results[i];
        std::cout << "panel " << panels[i].label << " (trials=" << panels[i].config.trials
                  << ", failed=" << res.failed_trials << ")\n";
        std::cout << "  scheme  eps  snr_db      gain_db    bound_db\n";
        for (const CurvePoint& p : res.curves) {
            std::cout << "  " << std::left << std::setw(8) << scheme_name(p.scheme) << std::setw(5)
                      << p.epsilon << std::setw(8) << format_g6(p.snr_db) << std::right
                      << std::fixed << std::setprecision(3) << std::setw(11) << p.mean_gain_db
                      << std::setw(12) << p.mean_bound_db << '\n';
            std::cout.unsetf(std::ios::floatfield);
        }
    }
}

int cmd_run(const SelectArgs& select, const OutputArgs& output) {
    const std::vector<ExperimentPanel> panels = resolve_panels(select);
    const unsigned threads = threads_from_env();

    std::vector<ExperimentResult> results;
    results.reserve(panels.size());
    for (const ExperimentPanel& panel : panels)
        results.push_back(run_experiment(panel.config, threads));

    const bool bundle = panels.size() > 1;
    if (output.format == "csv") {
        if (bundle) {
            write_file(output.output, bundle_curves_csv(panels, results));
        } else {
            std::ostringstream os;
            write_curves_csv(os, results[0].curves);
            write_file(output.output, os.str());
        }
    } else {
        json doc = json::object();
        doc["panels"] = json::array();
        for (std::size_t i = 0; i < panels.size(); ++i)
            doc["panels"].push_back(
                json{{"panel", panels[i].label},
                     {"config", panels[i].config},
                     {"curves", results[i].curves},
                     {"failed_trials", results[i].failed_trials}});
        write_file(output.output, doc.dump(2) + "\n");
    }

    if (!output.per_trial_path.empty()) {
        if (bundle) {
            write_file(output.per_trial_path, bundle_trials_csv(panels, results));
        } else {
            std::ostringstream os;
            write_trials_csv(os, results[0].records);
            write_file(output.per_trial_path, os.str());
        }
    }

    print_summary(panels, results);
    std::cout << "wrote " << output.output << '\n';
    return 0;
}

int cmd_train(const std::string& scheme_text, const std::string& channel_text, std::size_t m,
              std::size_t n, int epsilon, const std::string& snr_text, std::uint64_t seed) {
    const Scheme scheme = scheme_from_name(scheme_text);
    const ChannelProfile profile = channel_text == "los" ? los_profile() : nlos_profile();
    const double snr_db = parse_snr_db(snr_text);
    if (epsilon < 1) throw std::invalid_argument("--epsilon must be >= 1");

    const TrialSeeds seeds = derive_trial_seeds(seed, 0, 0);
    const TrialDetail detail = run_trial_detailed(profile, m, n, scheme, epsilon, snr_db, seeds);
    if (detail.record.failed) {
        std::cerr << "training failed on a degenerate measurement\n";
        return 1;
    }

    json doc = detail.result;  // t, r, slots_used
    doc["scheme"] = scheme_name(scheme);
    doc["channel"] = channel_text;
    doc["m_tx"] = m;
    doc["n_rx"] = n;
    doc["epsilon"] = epsilon;
    doc["snr_db"] = std::isinf(snr_db) ? json("inf") : json(snr_db);
    doc["ca_constrained"] = detail.result.t.ca_constrained;
    doc["gain_linear"] = detail.record.gain_linear;
    doc["gain_db"] = to_db(detail.record.gain_linear);
    doc["svd_bound_linear"] = detail.record.svd_bound_linear;
    doc["svd_bound_db"] = to_db(detail.record.svd_bound_linear);
    std::cout << doc.dump(2) << '\n';
    return 0;
}

int cmd_presets() {
    for (const Preset& preset : shipped_presets()) {
        std::cout << preset.name << ": " << preset.description << '\n';
        for (const ExperimentPanel& panel : preset.panels) {
            const json cfg = panel.config;
            std::cout << "  " << panel.label << " " << cfg.dump() << '\n';
        }
    }
    return 0;
}

int cmd_validate(const SelectArgs& select) {
    const std::vector<ExperimentPanel> panels = resolve_panels(select);
    for (const ExperimentPanel& panel : panels)
        std::cout << "ok: " << panel.label << " (" << panel.config.trials << " trials, "
                  << panel.config.schemes.size() * panel.config.epsilons.size() *
                         panel.config.snr_db_grid.size()
                  << " cells)\n";
    return 0;
}

void add_select_options(CLI::App* cmd, SelectArgs& select) {
    cmd->add_option("--preset", select.preset, "Name of a shipped preset");
    cmd->add_option("--config", select.config_path, "Path to an experiment config JSON file");
    cmd->add_option("--set", select.sets, "Dotted-key override, e.g. --set trials=100")
        ->take_all();
    cmd->add_option("--seed", select.seed, "Override master_seed")
        ->each([&select](const std::string&) { select.seed_given = true; });
    cmd->add_option("--trials", select.trials, "Override trials")
        ->each([&select](const std::string&) { select.trials_given = true; });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Iterative joint Tx/Rx beamforming-training simulator"};
    app.require_subcommand(1);

    SelectArgs select;
    OutputArgs output;
    CLI::App* run = app.add_subcommand("run", "Run a Monte Carlo experiment and write results");
    add_select_options(run, select);
    run->add_option("-o,--output", output.output, "Results file path")->capture_default_str();
    run->add_option("--format", output.format, "Results file format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    run->add_option("--per-trial", output.per_trial_path, "Also write a per-trial CSV here");

    std::string train_scheme, train_channel, train_snr;
    std::size_t train_m = 0, train_n = 0;
    int train_epsilon = 0;
    std::uint64_t train_seed = 0;
    CLI::App* train = app.add_subcommand("train", "Train once on one sampled channel, print JSON");
    train->add_option("--scheme", train_scheme)->check(CLI::IsMember({"sgv", "stv"}))->required();
    train->add_option("--channel", train_channel)->check(CLI::IsMember({"los", "nlos"}))->required();
    train->add_option("--m", train_m, "Transmit antennas")->required();
    train->add_option("--n", train_n, "Receive antennas")->required();
    train->add_option("--epsilon", train_epsilon, "Iteration count")->required();
    train->add_option("--snr-db", train_snr, "Transmit SNR in dB, or 'inf'")->required();
    train->add_option("--seed", train_seed)->required();

    CLI::App* presets = app.add_subcommand("presets", "List shipped presets");
    SelectArgs validate_select;
    CLI::App* validate = app.add_subcommand("validate", "Validate a preset or config file");
    add_select_options(validate, validate_select);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(select, output);
        if (train->parsed())
            return cmd_train(train_scheme, train_channel, train_m, train_n, train_epsilon,
                             train_snr, train_seed);
        if (presets->parsed()) return cmd_presets();
        if (validate->parsed()) return cmd_validate(validate_select);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
