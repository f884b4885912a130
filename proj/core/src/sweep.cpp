#include "lambdacool/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace lambdacool::sweep {

namespace {

constexpr double default_wavelength_m = 780e-9; // Rb D2, used when no wavelength is configured

AngularFrequency hz(double f) { return AngularFrequency::from_hz(f); }

OpticalCavityParams resolve_cavity(const CavityConfig& cfg, const std::string& prefix) {
    try {
        const auto kappa = hz(cfg.kappa_hz);
        const auto kappa_in = hz(cfg.kappa_in_hz > 0.0 ? cfg.kappa_in_hz : 0.5 * cfg.kappa_hz);
        const auto detuning = hz(cfg.detuning_hz);
        const double lambda = cfg.wavelength_m > 0.0 ? cfg.wavelength_m : default_wavelength_m;
        if (cfg.drive > 0.0) {
            auto p = OpticalCavityParams::from_drive(kappa, kappa_in, detuning, cfg.drive);
            p.drive_wavelength = lambda;
            return p;
        }
        auto p = OpticalCavityParams::from_power(kappa, kappa_in, detuning, cfg.input_power_w,
                                                 lambda);
        return p;
    } catch (const ValidationError& e) {
        throw ValidationError(prefix + "." + e.field, e.what());
    }
}

MechanicalParams resolve_mech(const MechConfig& cfg) {
    try {
        return MechanicalParams::make(hz(cfg.omega_m_hz), cfg.quality_factor, hz(cfg.g0_hz),
                                      cfg.bath_temperature_k, cfg.mass_kg);
    } catch (const ValidationError& e) {
        throw ValidationError("mech." + e.field, e.what());
    }
}

EitMediumParams resolve_eit(const EitConfig& cfg) {
    try {
        EitMediumParams m;
        m.n_atoms = cfg.n_atoms;
        m.n_ground = cfg.n_ground < 0.0 ? cfg.n_atoms : cfg.n_ground;
        m.n_meta = cfg.n_meta;
        m.rabi_control = hz(cfg.rabi_control_hz);
        m.rabi_single_atom = hz(cfg.rabi_single_atom_hz);
        m.gamma_e = hz(cfg.gamma_e_hz);
        m.gamma_gm = hz(cfg.gamma_gm_hz);
        m.delta_a = hz(cfg.delta_a_hz);
        m.delta_c = m.delta_a;
        m.use_general_form = cfg.use_general_form;
        return validate_eit(m);
    } catch (const ValidationError& e) {
        throw ValidationError("eit." + e.field, e.what());
    }
}

RirMediumParams resolve_rir(const RirConfig& cfg) {
    try {
        return RirMediumParams::make(
            cfg.n_atoms, hz(cfg.rabi_control_hz), hz(cfg.rabi_single_atom_hz),
            hz(cfg.delta_a_hz), hz(cfg.omega_r_hz), hz(cfg.gamma_coh_hz), cfg.temperature_k,
            hz(cfg.gamma_e_hz), cfg.medium_length_m,
            cfg.gamma_pop_hz > 0.0 ? hz(cfg.gamma_pop_hz) : AngularFrequency{});
    } catch (const ValidationError& e) {
        throw ValidationError("rir." + e.field, e.what());
    }
}

MomentumGrid resolve_grid(const RunConfig& config, const RirMediumParams& medium) {
    if (config.rir.grid_points > 0) {
        return thermal_distribution(medium.temperature, medium.omega_r,
                                    GridSpec{config.rir.grid_p_max, config.rir.grid_points});
    }
    const double omega_m = two_pi * config.mech.omega_m_hz;
    const double delta0 = two_pi * config.point.delta_two_photon_hz;
    const double band =
        4.0 * medium.omega_r.rad_per_s() *
        (2.0 * thermal_sigma_p(medium.temperature, medium.omega_r) + 1.0);
    std::vector<double> probes = {delta0, delta0 + omega_m, delta0 - omega_m,
                                  band,   -band,            2.0 * band,
                                  -2.0 * band};
    if (config.axis1.active() && config.axis1.param == "point.delta_two_photon_hz") {
        probes.push_back(two_pi * config.axis1.start);
        probes.push_back(two_pi * config.axis1.stop);
        probes.push_back(pi * (config.axis1.start + config.axis1.stop));
    }
    return make_converged_grid(medium, probes);
}

} // namespace

ResolvedSystem resolve_system(const RunConfig& config) {
    if (config.scheme == "eit_feedback") {
        ResolvedEitFeedback r;
        r.system.cavity_m = resolve_cavity(config.cavity_m, "cavity_m");
        r.system.cavity_a = resolve_cavity(config.cavity_a, "cavity_a");
        r.system.medium = resolve_eit(config.eit);
        r.system.mech = resolve_mech(config.mech);
        r.system.j = CouplingJ::feedback(r.system.cavity_a.kappa_in, r.system.cavity_m.kappa_in);
        return r;
    }
    if (config.scheme == "rir_cascade") {
        ResolvedRirCascade r;
        r.system.cavity_m = resolve_cavity(config.cavity_m, "cavity_m");
        r.system.medium = resolve_rir(config.rir);
        r.system.grid = resolve_grid(config, r.system.medium);
        r.system.mech = resolve_mech(config.mech);
        r.system.j = CouplingJ::cascade(r.system.medium.kappa_a, r.system.cavity_m.kappa);
        const double lambda =
            config.rir.wavelength_m > 0.0 ? config.rir.wavelength_m : default_wavelength_m;
        r.system.eta_medium =
            drive_amplitude(config.rir.input_power_w, r.system.medium.kappa_a, lambda);
        return r;
    }
    ResolvedBare r;
    r.cavity_m = resolve_cavity(config.cavity_m, "cavity_m");
    r.mech = resolve_mech(config.mech);
    return r;
}

CoolingResult evaluate_point(const RunConfig& config, const ResolvedSystem& resolved,
                             AngularFrequency delta_cm_tilde, bool bare_baseline) {
    CoolingResult result;
    if (const auto* eit = std::get_if<ResolvedEitFeedback>(&resolved)) {
        OperatingPoint pt;
        pt.delta_cm_tilde = delta_cm_tilde;
        pt.topology = bare_baseline ? Topology::Bare : Topology::Feedback;
        if (config.run.lock == "drive_frequency") {
            // sweeping the drive frequency moves every detuning together
            pt.delta_ca = delta_cm_tilde + hz(config.point.delta_ca_hz);
            pt.delta_two_photon = delta_cm_tilde + hz(config.point.delta_two_photon_hz);
        } else {
            pt.delta_ca = hz(config.point.delta_ca_hz);
            pt.delta_two_photon = hz(config.point.delta_two_photon_hz);
        }
        result = evaluate_eit_feedback(eit->system, pt);
    } else if (const auto* rir = std::get_if<ResolvedRirCascade>(&resolved)) {
        OperatingPoint pt;
        pt.delta_cm_tilde = delta_cm_tilde;
        pt.delta_two_photon = hz(config.point.delta_two_photon_hz);
        if (bare_baseline && config.run.cascade_baseline == "filtered") {
            RirCascadeSystem empty = rir->system;
            empty.medium.n_atoms = 0.0;
            pt.topology = Topology::Cascade;
            result = evaluate_rir_cascade(empty, pt);
        } else {
            pt.topology = bare_baseline ? Topology::Bare : Topology::Cascade;
            result = evaluate_rir_cascade(rir->system, pt);
        }
    } else {
        const auto& bare = std::get<ResolvedBare>(resolved);
        OperatingPoint pt;
        pt.delta_cm_tilde = delta_cm_tilde;
        pt.topology = Topology::Bare;
        result = cascade_cooling(bare.mech, bare.cavity_m, bare.cavity_m.drive, pt);
    }
    if (std::norm(result.field_c) > config.run.photon_cap) {
        result.stable = false;
        result.n_min = std::numeric_limits<double>::quiet_NaN();
    }
    return result;
}

int worker_count(int requested) {
    if (requested > 0)
        return std::min(requested, 256);
    if (const char* env = std::getenv("LAMBDACOOL_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0)
            return std::min(n, 256);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

std::map<std::string, std::string> build_metadata(const RunConfig& config) {
    std::map<std::string, std::string> meta;
    for (const auto& key : schema_keys())
        meta[key] = get_key(config, key);
    meta["lambdacool.version"] = version_string;
    meta["param_hash"] = config_hash_hex(config);
    meta["convention.frequencies"] =
        "config values are Hz; internal rates are angular (factor 2*pi applied)";
    if (config.cavity_m.wavelength_m == 0.0 && config.rir.wavelength_m == 0.0)
        meta["assumption.wavelength_m"] = format_double(default_wavelength_m) +
                                          " (default, Rb D2)";
    if (config.cavity_m.kappa_in_hz == 0.0)
        meta["assumption.cavity_m.kappa_in"] = "kappa/2 (symmetric two-sided cavity)";
    if (config.scheme == "eit_feedback" && !config.keys_set.count("eit.gamma_gm_hz"))
        meta["assumption.eit.gamma_gm_hz"] = "100 (typical ground-state coherence decay)";
    for (const auto& [k, v] : config.metadata)
        meta["meta." + k] = v;
    return meta;
}

namespace {

std::vector<double> axis_values(const AxisSpec& axis) {
    std::vector<double> v(axis.points);
    if (axis.scale == "log") {
        const double la = std::log(axis.start);
        const double lb = std::log(axis.stop);
        for (int i = 0; i < axis.points; ++i)
            v[i] = std::exp(la + (lb - la) * i / (axis.points - 1));
    } else {
        for (int i = 0; i < axis.points; ++i)
            v[i] = axis.start + (axis.stop - axis.start) * i / (axis.points - 1);
    }
    return v;
}

const std::string nan_cell = "nan";

void append_cooling_cells(std::vector<std::string>& row, const CoolingResult& r, bool ok,
                          bool detailed) {
    row.push_back(ok ? format_double(r.gamma_opt.hz()) : nan_cell);
    row.push_back(ok ? format_double(r.gamma_stokes.hz()) : nan_cell);
    row.push_back(ok ? format_double(r.gamma_anti_stokes.hz()) : nan_cell);
    if (detailed) {
        row.push_back(ok ? format_double(r.k_opt_per_mass) : nan_cell);
        row.push_back(ok ? format_double(r.k_opt) : nan_cell);
    }
    row.push_back(ok ? format_double(r.n_min) : nan_cell);
    row.push_back(ok ? format_double(std::abs(r.field_c)) : nan_cell);
    if (detailed)
        row.push_back(ok ? format_double(r.g_linear.hz()) : nan_cell);
    row.push_back(ok && r.stable ? "1" : "0");
    row.push_back(ok ? "1" : "0");
}

struct RowJob {
    RunConfig local;
    std::vector<double> axis_cells;
};

} // namespace

SweepTable run_sweep(const RunConfig& config, int threads) {
    validate_config(config);

    SweepTable table;
    table.metadata = build_metadata(config);
    const std::string hash = config_hash_hex(config);

    // grid of per-point configs, axis2-major
    std::vector<RowJob> jobs;
    if (config.axis1.active()) {
        const auto v1 = axis_values(config.axis1);
        if (config.axis2.active()) {
            const auto v2 = axis_values(config.axis2);
            jobs.reserve(v1.size() * v2.size());
            for (double b : v2) {
                for (double a : v1) {
                    RowJob job{config, {a, b}};
                    set_key_double(job.local, config.axis1.param, a);
                    set_key_double(job.local, config.axis2.param, b);
                    jobs.push_back(std::move(job));
                }
            }
        } else {
            jobs.reserve(v1.size());
            for (double a : v1) {
                RowJob job{config, {a}};
                set_key_double(job.local, config.axis1.param, a);
                jobs.push_back(std::move(job));
            }
        }
    } else {
        jobs.push_back(RowJob{config, {}});
    }

    // column layout per observable
    if (config.axis1.active())
        table.columns.push_back(config.axis1.param);
    if (config.axis2.active())
        table.columns.push_back(config.axis2.param);

    const std::string& obs = config.observable;
    const std::string& opt = config.run.optimize;
    if (obs == "cooling" && opt == "none") {
        table.columns.push_back("delta_cm_tilde_hz");
        for (const char* c :
             {"gamma_opt_hybrid_hz", "gamma_stokes_hybrid_hz", "gamma_anti_stokes_hybrid_hz",
              "k_opt_per_mass_hybrid", "k_opt_hybrid", "n_min_hybrid", "abs_c_hybrid",
              "g_linear_hybrid_hz", "stable_hybrid", "ok_hybrid", "gamma_opt_bare_hz",
              "gamma_stokes_bare_hz", "gamma_anti_stokes_bare_hz", "n_min_bare", "abs_c_bare",
              "stable_bare", "ok_bare"})
            table.columns.push_back(c);
    } else if (obs == "cooling" && opt == "min_n_min") {
        for (const char* c : {"xi", "n_min_hybrid", "dtilde_opt_hybrid_hz",
                              "gamma_opt_hybrid_hz", "n_min_bare", "dtilde_opt_bare_hz",
                              "gamma_opt_bare_hz", "ok"})
            table.columns.push_back(c);
    } else if (obs == "cooling" && opt == "max_gamma_opt") {
        for (const char* c : {"gamma_opt_max_hz", "dtilde_argmax_hz", "n_min_at_max", "stable",
                              "ok"})
            table.columns.push_back(c);
    } else if (obs == "chi") {
        for (const char* c : {"chi_re_hz", "chi_im_hz", "ok"})
            table.columns.push_back(c);
    } else if (obs == "field") {
        for (const char* c : {"field_re", "field_im", "field_abs", "field_abs_norm",
                              "field_abs_bare_norm", "ok"})
            table.columns.push_back(c);
    }
    table.columns.push_back("param_hash");

    table.rows.assign(jobs.size(), {});

    const auto run_job = [&](std::size_t index) {
        const RowJob& job = jobs[index];
        std::vector<std::string>& row = table.rows[index];
        for (double a : job.axis_cells)
            row.push_back(format_double(a));

        try {
            if (obs == "cooling") {
                const ResolvedSystem resolved = resolve_system(job.local);
                const auto omega_m = hz(job.local.mech.omega_m_hz);
                if (opt == "none") {
                    const auto dtilde = hz(job.local.point.delta_cm_tilde_hz);
                    row.push_back(format_double(dtilde.hz()));
                    bool ok_h = true, ok_b = true;
                    CoolingResult hybrid, bare;
                    try {
                        hybrid = evaluate_point(job.local, resolved, dtilde, false);
                    } catch (const Error&) {
                        ok_h = false;
                    }
                    try {
                        bare = evaluate_point(job.local, resolved, dtilde, true);
                    } catch (const Error&) {
                        ok_b = false;
                    }
                    append_cooling_cells(row, hybrid, ok_h, true);
                    append_cooling_cells(row, bare, ok_b, false);
                } else if (opt == "min_n_min") {
                    const auto hybrid = minimize_n_min(
                        [&](AngularFrequency d) {
                            return evaluate_point(job.local, resolved, d, false);
                        },
                        omega_m, job.local.run.xi_window, job.local.run.scan_points);
                    const auto bare = minimize_n_min(
                        [&](AngularFrequency d) {
                            return evaluate_point(job.local, resolved, d, true);
                        },
                        omega_m, job.local.run.xi_window, job.local.run.scan_points);
                    const double xi = improvement_factor(bare.result.n_min, hybrid.result.n_min);
                    row.push_back(format_double(xi));
                    row.push_back(format_double(hybrid.result.n_min));
                    row.push_back(format_double(hybrid.delta_cm_tilde.hz()));
                    row.push_back(format_double(hybrid.result.gamma_opt.hz()));
                    row.push_back(format_double(bare.result.n_min));
                    row.push_back(format_double(bare.delta_cm_tilde.hz()));
                    row.push_back(format_double(bare.result.gamma_opt.hz()));
                    row.push_back("1");
                } else {
                    const auto best = maximize_gamma_opt(
                        [&](AngularFrequency d) {
                            return evaluate_point(job.local, resolved, d, false);
                        },
                        omega_m, job.local.run.xi_window, job.local.run.scan_points);
                    row.push_back(format_double(best.result.gamma_opt.hz()));
                    row.push_back(format_double(best.delta_cm_tilde.hz()));
                    row.push_back(format_double(best.result.n_min));
                    row.push_back(best.result.stable ? "1" : "0");
                    row.push_back("1");
                }
            } else if (obs == "chi") {
                const auto delta = hz(job.local.point.delta_two_photon_hz);
                ComplexSusceptibility chi;
                if (job.local.scheme == "rir_cascade") {
                    const auto medium = resolve_rir(job.local.rir);
                    const auto grid = resolve_grid(job.local, medium);
                    chi = chi_rir(medium, grid, delta);
                } else {
                    const auto medium = resolve_eit(job.local.eit);
                    chi = chi_eit(medium, TwoPhotonDetuning{delta});
                }
                row.push_back(format_double(chi.re / two_pi));
                row.push_back(format_double(chi.im / two_pi));
                row.push_back("1");
            } else { // field
                std::complex<double> f;
                double bare_abs = 0.0, resonant_abs = 0.0;
                if (job.local.scheme == "rir_cascade") {
                    const auto medium = resolve_rir(job.local.rir);
                    const auto grid = resolve_grid(job.local, medium);
                    const double lambda = job.local.rir.wavelength_m > 0.0
                                              ? job.local.rir.wavelength_m
                                              : default_wavelength_m;
                    const double eta =
                        drive_amplitude(job.local.rir.input_power_w, medium.kappa_a, lambda);
                    const auto delta = hz(job.local.point.delta_two_photon_hz);
                    f = rir_medium_field(medium, grid, eta, delta);
                    bare_abs = eta / (0.5 * medium.kappa_a.rad_per_s());
                    resonant_abs = bare_abs;
                } else {
                    const auto cavity = resolve_cavity(job.local.cavity_a, "cavity_a");
                    const auto medium = resolve_eit(job.local.eit);
                    // lock: the scan detuning doubles as the two-photon detuning
                    f = eit_cavity_field(cavity, medium, TwoPhotonDetuning{cavity.detuning});
                    bare_abs = std::abs(effective_cavity_response(
                        cavity.detuning, cavity.kappa, ComplexSusceptibility{}, cavity.drive));
                    resonant_abs = cavity.drive / (0.5 * cavity.kappa.rad_per_s());
                }
                row.push_back(format_double(f.real()));
                row.push_back(format_double(f.imag()));
                row.push_back(format_double(std::abs(f)));
                row.push_back(format_double(std::abs(f) / resonant_abs));
                row.push_back(format_double(bare_abs / resonant_abs));
                row.push_back("1");
            }
        } catch (const Error&) {
            // flagged, not dropped: flag columns read 0, values nan
            row.resize(job.axis_cells.size());
            for (std::size_t c = row.size(); c + 1 < table.columns.size(); ++c) {
                const std::string& name = table.columns[c];
                const bool flag = name.rfind("ok", 0) == 0 || name.rfind("stable", 0) == 0;
                row.push_back(flag ? "0" : nan_cell);
            }
        }
        while (row.size() + 1 < table.columns.size())
            row.push_back(nan_cell);
        row.push_back(hash);
    };

    const int n_workers =
        static_cast<int>(std::min<std::size_t>(worker_count(threads), jobs.size()));
    if (n_workers <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i)
            run_job(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= jobs.size())
                    return;
                try {
                    run_job(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(n_workers - 1);
        for (int t = 0; t < n_workers - 1; ++t)
            pool.emplace_back(worker);
        worker();
        for (auto& th : pool)
            th.join();
        if (first_error)
            std::rethrow_exception(first_error);
    }

    return table;
}

} // namespace lambdacool::sweep
