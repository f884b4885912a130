// lambdacool command line: chi scans, field profiles, cooling evaluations,
// parameter sweeps, figure reproduction and the oracle cross-check.
//
// Exit codes: 0 success, 2 config error, 3 numerical failure,
// 4 oracle-check failure.

#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <iostream>
#include <random>

#include "lambdacool/oracle.hpp"
#include "lambdacool/presets.hpp"
#include "lambdacool/sweep.hpp"

namespace lc = lambdacool;
namespace ls = lambdacool::sweep;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;
constexpr int exit_check_failed = 4;

struct CommonArgs {
    std::string config_path;
    std::string output;
    int threads = 0;
    bool no_timestamp = false;
    std::vector<std::pair<std::string, std::string>> overrides;
};

bool is_schema_key(const std::string& key) {
    if (key.rfind("meta.", 0) == 0)
        return true;
    for (const auto& k : ls::schema_keys())
        if (k == key)
            return true;
    return false;
}

// Config overrides arrive as `--section.key value` (or `--scheme ...` for the
// top-level keys); CLI11 cannot declare them up front, so they are peeled
// off argv first.
std::vector<std::string> extract_overrides(int argc, char** argv,
                                           std::vector<std::pair<std::string, std::string>>& out) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        const auto eq_pos = arg.find('=');
        const std::string head = arg.size() > 2 ? arg.substr(2, eq_pos == std::string::npos
                                                                    ? std::string::npos
                                                                    : eq_pos - 2)
                                                : std::string{};
        if (arg.rfind("--", 0) == 0 &&
            (arg.find('.') != std::string::npos || is_schema_key(head))) {
            const auto eq = arg.find('=');
            if (eq != std::string::npos) {
                out.emplace_back(arg.substr(2, eq - 2), arg.substr(eq + 1));
                continue;
            }
            if (i + 1 < argc) {
                out.emplace_back(arg.substr(2), argv[++i]);
                continue;
            }
            throw lc::ValidationError(arg, "override needs a value");
        }
        args.push_back(arg);
    }
    return args;
}

ls::RunConfig assemble_config(const CommonArgs& common, const char* forced_observable = nullptr,
                              const char* forced_scheme = nullptr) {
    ls::RunConfig config;
    if (!common.config_path.empty()) {
        config = ls::load_config(common.config_path);
    } else {
        config.schema = 1;
        config.keys_set.insert("schema");
    }
    if (forced_scheme && config.scheme.empty())
        ls::apply_override(config, "scheme", forced_scheme);
    if (forced_observable)
        ls::apply_override(config, "observable", forced_observable);
    for (const auto& [k, v] : common.overrides)
        ls::apply_override(config, k, v);
    ls::validate_config(config);
    return config;
}

void emit(const ls::SweepTable& table, const CommonArgs& common, const ls::RunConfig& config) {
    std::string path = common.output;
    if (path.empty())
        path = config.output_path;
    if (path.empty() || path == "-") {
        ls::write_csv(std::cout, table, !common.no_timestamp);
    } else {
        ls::write_csv_file(path, table, !common.no_timestamp);
        std::cerr << "wrote " << path << "\n";
    }
}

int run_table_command(const CommonArgs& common, const char* observable, const char* scheme) {
    const ls::RunConfig config = assemble_config(common, observable, scheme);
    const ls::SweepTable table = ls::run_sweep(config, common.threads);
    emit(table, common, config);
    return exit_ok;
}

// ---- oracle-check -----------------------------------------------------

struct OracleCheckArgs {
    int points = 20;
    unsigned seed = 20250808;
    double tolerance = 1e-6;
    std::string dump_trajectory;
    bool verbose = false;
};

// Debug trajectory: one representative EIT relaxation dumped as CSV.
void dump_example_trajectory(const std::string& path) {
    const double ge = lc::two_pi * 6.07e6;
    const double kappa = lc::two_pi * 10e6;
    auto medium = lc::EitMediumParams::all_ground(
        1e6, lc::AngularFrequency::from_rad_per_s(2.0 * ge),
        lc::AngularFrequency::from_hz(5e3), lc::AngularFrequency::from_rad_per_s(ge),
        lc::AngularFrequency::from_hz(500.0), lc::AngularFrequency::from_rad_per_s(10.0 * ge));
    auto cavity = lc::OpticalCavityParams::from_drive(
        lc::AngularFrequency::from_rad_per_s(kappa),
        lc::AngularFrequency::from_rad_per_s(0.5 * kappa),
        lc::AngularFrequency::from_hz(1e6), 1e3);
    lc::oracle::EitOracleOptions opt;
    opt.trajectory_samples = 500;
    const auto run = lc::oracle::integrate_eit(cavity, medium,
                                               lc::TwoPhotonDetuning{lc::AngularFrequency::from_hz(120e3)},
                                               lc::oracle::EitState{{}, {}, {}, {}, 1e6, 0.0},
                                               opt);
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f)
        throw lc::Error("cannot open '" + path + "'");
    std::fprintf(f, "t,re_a,im_a,re_sge,im_sge,re_sgm,im_sgm,re_sem,im_sem\n");
    for (const auto& [t, s] : run.trajectory)
        std::fprintf(f, "%.9e,%.9e,%.9e,%.9e,%.9e,%.9e,%.9e,%.9e,%.9e\n", t, s.a.real(),
                     s.a.imag(), s.sigma_ge.real(), s.sigma_ge.imag(), s.sigma_gm.real(),
                     s.sigma_gm.imag(), s.sigma_em.real(), s.sigma_em.imag());
    std::fclose(f);
    std::cerr << "wrote " << path << "\n";
}

int run_oracle_check(const OracleCheckArgs& args) {
    if (!args.dump_trajectory.empty())
        dump_example_trajectory(args.dump_trajectory);

    const auto outcome =
        lc::oracle::verify_oracle_equivalence(args.points, args.seed, args.tolerance);
    if (args.verbose)
        for (std::size_t i = 0; i < outcome.residuals.size(); ++i)
            std::fprintf(stderr, "point %3zu: rel %.3e\n", i, outcome.residuals[i]);
    for (const auto& msg : outcome.failures)
        std::fprintf(stderr, "FAIL %s\n", msg.c_str());
    if (outcome.failed == 0) {
        std::cout << "oracle-check: " << outcome.checked << " points OK (worst rel "
                  << outcome.worst_rel << ")\n";
        return exit_ok;
    }
    std::cerr << "oracle-check: " << outcome.failed << " failures\n";
    return exit_check_failed;
}

} // namespace

int main(int argc, char** argv) {
    CommonArgs common;
    std::vector<std::string> args;
    try {
        args = extract_overrides(argc, argv, common.overrides);
    } catch (const lc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }

    CLI::App app{"Optical response of atomic Lambda media and hybrid optomechanical cooling"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("-c,--config", common.config_path, "config file (key = value, schema 1)");
        cmd->add_option("-o,--output", common.output, "output CSV path ('-' = stdout)");
        cmd->add_option("-j,--threads", common.threads,
                        "worker threads (default: LAMBDACOOL_THREADS or hardware)");
        cmd->add_flag("--no-timestamp", common.no_timestamp, "omit the timestamp metadata line");
    };

    auto* chi_eit_cmd =
        app.add_subcommand("chi-eit", "EIT susceptibility vs two-photon detuning");
    add_common(chi_eit_cmd);
    auto* chi_rir_cmd =
        app.add_subcommand("chi-rir", "RIR susceptibility vs two-photon detuning");
    add_common(chi_rir_cmd);
    auto* field_cmd = app.add_subcommand("field", "dressed cavity / medium field profile");
    add_common(field_cmd);
    auto* cool_cmd = app.add_subcommand("cool", "cooling figures of merit");
    add_common(cool_cmd);
    auto* sweep_cmd = app.add_subcommand("sweep", "generic 1-D/2-D parameter sweep");
    add_common(sweep_cmd);

    std::string figure_id;
    std::string out_dir = ".";
    bool plot_script = false;
    auto* repro_cmd = app.add_subcommand("reproduce", "emit a figure's data as CSV");
    repro_cmd->add_option("figure", figure_id, "fig3..fig12")->required();
    repro_cmd->add_option("-d,--dir", out_dir, "output directory");
    repro_cmd->add_flag("--plot-script", plot_script, "also emit a python plot helper");
    repro_cmd->add_option("-j,--threads", common.threads, "worker threads");

    OracleCheckArgs oracle_args;
    auto* oracle_cmd =
        app.add_subcommand("oracle-check", "time-domain integrator vs closed forms");
    oracle_cmd->add_option("-n,--points", oracle_args.points, "random points per scheme");
    oracle_cmd->add_option("--seed", oracle_args.seed, "RNG seed");
    oracle_cmd->add_option("--tolerance", oracle_args.tolerance, "relative tolerance");
    oracle_cmd->add_option("--dump-trajectory", oracle_args.dump_trajectory,
                           "write the first EIT trajectory as CSV (debug)");
    oracle_cmd->add_flag("-v,--verbose", oracle_args.verbose, "per-point residuals");

    std::vector<char*> argv_rest;
    argv_rest.push_back(argv[0]);
    for (auto& a : args)
        argv_rest.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv_rest.size()), argv_rest.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? exit_config : exit_ok;
    }

    try {
        if (chi_eit_cmd->parsed())
            return run_table_command(common, "chi", "eit_feedback");
        if (chi_rir_cmd->parsed())
            return run_table_command(common, "chi", "rir_cascade");
        if (field_cmd->parsed())
            return run_table_command(common, "field", nullptr);
        if (cool_cmd->parsed())
            return run_table_command(common, "cooling", nullptr);
        if (sweep_cmd->parsed())
            return run_table_command(common, nullptr, nullptr);
        if (repro_cmd->parsed()) {
            const auto figure = ls::figure_from_string(figure_id);
            const auto result = ls::reproduce(figure, out_dir, plot_script, common.threads);
            for (const auto& f : result.files)
                std::cout << f << "\n";
            return exit_ok;
        }
        if (oracle_cmd->parsed())
            return run_oracle_check(oracle_args);
    } catch (const lc::ParseError& e) {
        std::cerr << "config parse error: " << e.what() << "\n";
        return exit_config;
    } catch (const lc::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const lc::UnknownFigure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const lc::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_config;
}
