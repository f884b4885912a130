#include "lambdacool/presets.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include "lambdacool/sweep.hpp"

namespace lambdacool::sweep {

namespace {

// Shared preset values
constexpr double gamma_e_hz = 6.07e6;       // Rb-87 D2 (2 pi x 6.07 MHz)
constexpr double omega_m_hz = 300e3;        // mechanical mode
constexpr double quality = 5e7;             // Q
constexpr double t_bath_k = 300.0;          // room temperature
constexpr double g0_hz = 200.0;             // single-photon coupling
constexpr double kappa_ca_hz = 70e6;        // atomic cavity linewidth
constexpr double n_atoms = 1e8;

// Free-space RIR medium: quoted as kappa_a = c/L_a = 2 pi x 600 GHz; the
// stored length realizes that rate under kappa_a = c / L.
constexpr double rir_kappa_a_hz = 600e9;
const double rir_length_m = speed_of_light / (two_pi * rir_kappa_a_hz);

// Carrier two-photon detuning for the cascade runs: places the coupling
// beam on the narrow RIR gain peak (located by scanning the medium gain
// profile; see the fig11 metadata).
constexpr double cascade_delta_carrier_hz = -130e3;

RunConfig base_mech_config() {
    RunConfig c;
    c.schema = 1;
    c.keys_set.insert("schema");
    apply_override(c, "mech.omega_m_hz", format_double(omega_m_hz));
    apply_override(c, "mech.quality_factor", format_double(quality));
    apply_override(c, "mech.g0_hz", format_double(g0_hz));
    apply_override(c, "mech.bath_temperature_k", format_double(t_bath_k));
    return c;
}

void set(RunConfig& c, const std::string& key, double value) {
    apply_override(c, key, format_double(value));
}

void set(RunConfig& c, const std::string& key, const std::string& value) {
    apply_override(c, key, value);
}

void add_eit_medium(RunConfig& c, double omega_over_gamma_e) {
    set(c, "eit.n_atoms", n_atoms);
    set(c, "eit.rabi_control_hz", omega_over_gamma_e * gamma_e_hz);
    set(c, "eit.rabi_single_atom_hz", 100e3);
    set(c, "eit.gamma_e_hz", gamma_e_hz);
    set(c, "eit.gamma_gm_hz", 100.0);
    set(c, "eit.delta_a_hz", 500.0 * gamma_e_hz);
}

void add_rir_medium(RunConfig& c, double omega_over_gamma_e, double temperature_k) {
    set(c, "rir.n_atoms", n_atoms);
    set(c, "rir.rabi_control_hz", omega_over_gamma_e * gamma_e_hz);
    // quoted single-atom Rabi frequency 2 pi x 500 kHz, full-Rabi convention;
    // the medium formulas take the Hamiltonian pair-coupling, i.e. half
    set(c, "rir.rabi_single_atom_hz", 250e3);
    set(c, "rir.delta_a_hz", -15.0 * gamma_e_hz);
    set(c, "rir.omega_r_hz", 3.77e3);
    set(c, "rir.gamma_coh_hz", 10e3);
    set(c, "rir.temperature_k", temperature_k);
    set(c, "rir.gamma_e_hz", gamma_e_hz);
    set(c, "rir.medium_length_m", rir_length_m);
    set(c, "meta.rir_rabi_convention",
        std::string("quoted E_a = 500 kHz read as full Rabi; coupling constant = E_a/2"));
    set(c, "meta.rir_kappa_a",
        std::string("kappa_a = 2 pi x 600 GHz; stored length is c/kappa_a"));
}

RunConfig eit_feedback_config(double kappa_cm_hz) {
    RunConfig c = base_mech_config();
    set(c, "scheme", "eit_feedback");
    set(c, "observable", "cooling");
    set(c, "cavity_m.kappa_hz", kappa_cm_hz);
    set(c, "cavity_m.input_power_w", 200e-9);
    set(c, "cavity_a.kappa_hz", kappa_ca_hz);
    // feedback mirror fully coupled; the loop strength J^2 = kappa_ca kappa_cm / 2
    set(c, "cavity_a.kappa_in_hz", kappa_ca_hz);
    add_eit_medium(c, 6.0);
    set(c, "run.lock", "drive_frequency");
    return c;
}

RunConfig rir_cascade_config(double kappa_cm_hz) {
    RunConfig c = base_mech_config();
    set(c, "scheme", "rir_cascade");
    set(c, "observable", "cooling");
    set(c, "cavity_m.kappa_hz", kappa_cm_hz);
    set(c, "cavity_m.input_power_w", 1e-9);
    add_rir_medium(c, 2.6, 21e-6);
    set(c, "rir.input_power_w", 1e-9);
    set(c, "point.delta_two_photon_hz", cascade_delta_carrier_hz);
    return c;
}

void set_sweep(RunConfig& c, const std::string& param, double start, double stop, int points,
               const std::string& scale = "linear") {
    set(c, "sweep.axis1.param", param);
    set(c, "sweep.axis1.start", start);
    set(c, "sweep.axis1.stop", stop);
    apply_override(c, "sweep.axis1.points", std::to_string(points));
    set(c, "sweep.axis1.scale", scale);
}

} // namespace

Figure figure_from_string(const std::string& name) {
    if (name == "fig3")
        return Figure::Fig3;
    if (name == "fig4")
        return Figure::Fig4;
    if (name == "fig5")
        return Figure::Fig5;
    if (name == "fig6")
        return Figure::Fig6;
    if (name == "fig8")
        return Figure::Fig8;
    if (name == "fig9")
        return Figure::Fig9;
    if (name == "fig10")
        return Figure::Fig10;
    if (name == "fig11")
        return Figure::Fig11;
    if (name == "fig12")
        return Figure::Fig12;
    if (name == "fig7" || name == "fig1" || name == "fig2")
        throw UnknownFigure(name + " is a schematic, no data to reproduce");
    throw UnknownFigure("unknown figure '" + name + "'");
}

std::string figure_name(Figure figure) {
    switch (figure) {
    case Figure::Fig3: return "fig3";
    case Figure::Fig4: return "fig4";
    case Figure::Fig5: return "fig5";
    case Figure::Fig6: return "fig6";
    case Figure::Fig8: return "fig8";
    case Figure::Fig9: return "fig9";
    case Figure::Fig10: return "fig10";
    case Figure::Fig11: return "fig11";
    case Figure::Fig12: return "fig12";
    }
    throw UnknownFigure("bad figure enum");
}

RunConfig preset_config(Figure figure) {
    switch (figure) {
    case Figure::Fig3: {
        RunConfig c;
        c.schema = 1;
        c.keys_set.insert("schema");
        set(c, "scheme", "eit_feedback");
        set(c, "observable", "chi");
        add_eit_medium(c, 6.0);
        set_sweep(c, "point.delta_two_photon_hz", -2.0 * omega_m_hz, 3.0 * omega_m_hz, 1501);
        return c;
    }
    case Figure::Fig4: {
        RunConfig c;
        c.schema = 1;
        c.keys_set.insert("schema");
        set(c, "scheme", "eit_feedback");
        set(c, "observable", "field");
        set(c, "cavity_a.kappa_hz", kappa_ca_hz);
        set(c, "cavity_a.drive", 1.0);
        add_eit_medium(c, 6.0);
        set_sweep(c, "cavity_a.detuning_hz", -3.0 * omega_m_hz, 3.0 * omega_m_hz, 1501);
        return c;
    }
    case Figure::Fig5: {
        RunConfig c;
        c.schema = 1;
        c.keys_set.insert("schema");
        set(c, "scheme", "rir_cascade");
        set(c, "observable", "chi");
        add_rir_medium(c, 2.6, 21e-6);
        set_sweep(c, "point.delta_two_photon_hz", -500e3, 500e3, 2001);
        return c;
    }
    case Figure::Fig6: {
        RunConfig c;
        c.schema = 1;
        c.keys_set.insert("schema");
        set(c, "scheme", "rir_cascade");
        set(c, "observable", "field");
        add_rir_medium(c, 2.6, 21e-6);
        set(c, "rir.input_power_w", 1e-9);
        set_sweep(c, "point.delta_two_photon_hz", -500e3, 500e3, 2001);
        return c;
    }
    case Figure::Fig8: {
        RunConfig c = eit_feedback_config(240e3);
        set_sweep(c, "point.delta_cm_tilde_hz", -2.0 * omega_m_hz, 2.0 * omega_m_hz, 801);
        return c;
    }
    case Figure::Fig9: {
        RunConfig c = eit_feedback_config(240e3);
        set(c, "run.optimize", "max_gamma_opt");
        set_sweep(c, "eit.rabi_control_hz", 1.0 * gamma_e_hz, 10.0 * gamma_e_hz, 41);
        set(c, "sweep.axis2.param", "eit.n_atoms");
        set(c, "sweep.axis2.start", 1e6);
        set(c, "sweep.axis2.stop", 1e9);
        apply_override(c, "sweep.axis2.points", "41");
        set(c, "sweep.axis2.scale", "log");
        return c;
    }
    case Figure::Fig10: {
        RunConfig c = eit_feedback_config(240e3);
        set(c, "run.optimize", "min_n_min");
        set_sweep(c, "cavity_m.kappa_hz", 1e5, 5e7, 49, "log");
        return c;
    }
    case Figure::Fig11: {
        RunConfig c = rir_cascade_config(240e3);
        set_sweep(c, "point.delta_cm_tilde_hz", -2.0 * omega_m_hz, 2.0 * omega_m_hz, 801);
        return c;
    }
    case Figure::Fig12: {
        RunConfig c = rir_cascade_config(240e3);
        set(c, "run.optimize", "min_n_min");
        set_sweep(c, "cavity_m.kappa_hz", 1e5, 5e7, 49, "log");
        return c;
    }
    }
    throw UnknownFigure("bad figure enum");
}

namespace {

std::string join_path(const std::string& dir, const std::string& file) {
    if (dir.empty())
        return file;
    return dir.back() == '/' ? dir + file : dir + "/" + file;
}

void write_sidecar(const std::string& path, const std::map<std::string, std::string>& meta) {
    std::ofstream os(path);
    if (!os)
        throw Error("cannot open '" + path + "'");
    for (const auto& [k, v] : meta)
        os << k << " = " << v << "\n";
}

void write_plot_script(const std::string& path, const std::vector<std::string>& csvs) {
    std::ofstream os(path);
    if (!os)
        throw Error("cannot open '" + path + "'");
    os << "#!/usr/bin/env python3\n"
          "# generic column plotter for the emitted CSV files\n"
          "import csv, sys\n"
          "import matplotlib.pyplot as plt\n\n"
          "files = sys.argv[1:] or [\n";
    for (const auto& f : csvs)
        os << "    " << '"' << f << '"' << ",\n";
    os << "]\n"
          "for name in files:\n"
          "    with open(name) as fh:\n"
          "        rows = [r for r in csv.reader(fh) if r and not r[0].startswith('#')]\n"
          "    header, data = rows[0], rows[1:]\n"
          "    xs = [float(r[0]) for r in data]\n"
          "    plt.figure()\n"
          "    for i, col in enumerate(header[1:-1], start=1):\n"
          "        try:\n"
          "            ys = [float(r[i]) for r in data]\n"
          "        except ValueError:\n"
          "            continue\n"
          "        plt.plot(xs, ys, label=col)\n"
          "    plt.xlabel(header[0])\n"
          "    plt.legend(fontsize=6)\n"
          "    plt.title(name)\n"
          "plt.show()\n";
}

// chi scans need per-curve media; assemble columns side by side.
SweepTable chi_table(const RunConfig& base, const std::vector<RunConfig>& variants,
                     const std::vector<std::string>& labels, double x_scale_hz,
                     const std::string& x_label, int threads) {
    SweepTable out;
    out.metadata = build_metadata(base);
    out.columns.push_back(x_label);
    std::vector<SweepTable> parts;
    for (const auto& v : variants) {
        parts.push_back(run_sweep(v, threads));
    }
    for (std::size_t c = 0; c < parts.size(); ++c) {
        out.columns.push_back("chi_re_hz_" + labels[c]);
        out.columns.push_back("chi_im_hz_" + labels[c]);
    }
    out.columns.push_back("param_hash");
    const std::size_t n_rows = parts.front().rows.size();
    const std::string hash = config_hash_hex(base);
    for (std::size_t i = 0; i < n_rows; ++i) {
        std::vector<std::string> row;
        const double x_hz = std::strtod(parts[0].rows[i][0].c_str(), nullptr);
        row.push_back(format_double(x_hz / x_scale_hz));
        for (const auto& part : parts) {
            row.push_back(part.rows[i][1]);
            row.push_back(part.rows[i][2]);
        }
        row.push_back(hash);
        out.rows.push_back(std::move(row));
    }
    return out;
}

SweepTable field_table(const RunConfig& base, const std::vector<RunConfig>& variants,
                       const std::vector<std::string>& labels, double x_scale_hz,
                       const std::string& x_label, int threads) {
    SweepTable out;
    out.metadata = build_metadata(base);
    out.columns.push_back(x_label);
    std::vector<SweepTable> parts;
    for (const auto& v : variants)
        parts.push_back(run_sweep(v, threads));
    out.columns.push_back("abs_bare_norm");
    for (const auto& label : labels)
        out.columns.push_back("abs_norm_" + label);
    out.columns.push_back("param_hash");
    const std::string hash = config_hash_hex(base);
    for (std::size_t i = 0; i < parts.front().rows.size(); ++i) {
        std::vector<std::string> row;
        const double x_hz = std::strtod(parts[0].rows[i][0].c_str(), nullptr);
        row.push_back(format_double(x_hz / x_scale_hz));
        // field columns: axis, re, im, abs, abs_norm, abs_bare_norm, ok
        row.push_back(parts[0].rows[i][5]);
        for (const auto& part : parts)
            row.push_back(part.rows[i][4]);
        row.push_back(hash);
        out.rows.push_back(std::move(row));
    }
    return out;
}

} // namespace

ReproduceResult reproduce(Figure figure, const std::string& output_dir, bool emit_plot_script,
                          int threads) {
    ReproduceResult result;
    const std::string name = figure_name(figure);

    auto emit = [&](const std::string& file, const SweepTable& table) {
        const std::string path = join_path(output_dir, file);
        write_csv_file(path, table);
        result.files.push_back(path);
    };

    switch (figure) {
    case Figure::Fig3: {
        RunConfig base = preset_config(figure);
        RunConfig omega4 = base;
        set(omega4, "eit.rabi_control_hz", 4.0 * gamma_e_hz);
        SweepTable t = chi_table(base, {omega4, base}, {"omega_4ge", "omega_6ge"}, omega_m_hz,
                                 "delta_over_omega_m", threads);
        t.metadata["normalization"] = "delta in units of omega_m = 2 pi x 300 kHz";
        emit(name + ".csv", t);
        break;
    }
    case Figure::Fig4: {
        RunConfig base = preset_config(figure);
        RunConfig omega4 = base;
        set(omega4, "eit.rabi_control_hz", 4.0 * gamma_e_hz);
        SweepTable t = field_table(base, {omega4, base}, {"omega_4ge", "omega_6ge"}, omega_m_hz,
                                   "detuning_over_omega_m", threads);
        t.metadata["normalization"] =
            "field normalized to the bare resonant amplitude 2 eta / kappa";
        // effective-linewidth diagnostics for the two control strengths
        const auto hz = [](double f) { return AngularFrequency::from_hz(f); };
        const auto cavity = OpticalCavityParams::from_drive(hz(kappa_ca_hz),
                                                            hz(0.5 * kappa_ca_hz),
                                                            AngularFrequency{}, 1.0);
        const auto medium_of = [&](double omega_over_ge) {
            return EitMediumParams::all_ground(n_atoms, hz(omega_over_ge * gamma_e_hz),
                                               hz(100e3), hz(gamma_e_hz), hz(100.0),
                                               hz(500.0 * gamma_e_hz));
        };
        const auto lw4 = eit_effective_linewidth(cavity, medium_of(4.0));
        const auto lw6 = eit_effective_linewidth(cavity, medium_of(6.0));
        t.metadata["fwhm_hz.bare"] = format_double(kappa_ca_hz);
        t.metadata["fwhm_hz.omega_4ge"] = format_double(lw4.fwhm.hz());
        t.metadata["fwhm_hz.omega_6ge"] = format_double(lw6.fwhm.hz());
        t.metadata["kappa_af_full_hz.omega_6ge"] = format_double(lw6.kappa_af_full.hz());
        t.metadata["kappa_af_half_hz.omega_6ge"] = format_double(lw6.kappa_af_half.hz());
        emit(name + ".csv", t);
        break;
    }
    case Figure::Fig5: {
        RunConfig base = preset_config(figure);
        RunConfig omega18 = base;
        set(omega18, "rir.rabi_control_hz", 1.8 * gamma_e_hz);
        SweepTable t = chi_table(base, {omega18, base}, {"omega_1p8ge", "omega_2p6ge"}, 1e3,
                                 "delta_khz", threads);
        emit(name + ".csv", t);
        break;
    }
    case Figure::Fig6: {
        RunConfig base = preset_config(figure);
        RunConfig omega18 = base;
        set(omega18, "rir.rabi_control_hz", 1.8 * gamma_e_hz);
        SweepTable t = field_table(base, {omega18, base}, {"omega_1p8ge", "omega_2p6ge"}, 1e3,
                                   "delta_khz", threads);
        t.metadata["normalization"] = "field normalized to the atom-free value 2 eta / kappa_a";
        emit(name + ".csv", t);
        break;
    }
    case Figure::Fig8:
    case Figure::Fig11: {
        RunConfig resolved_cfg = preset_config(figure);
        RunConfig doppler_cfg = resolved_cfg;
        set(doppler_cfg, "cavity_m.kappa_hz", 3.6e6);
        emit(name + "_resolved_sideband.csv", run_sweep(resolved_cfg, threads));
        emit(name + "_doppler.csv", run_sweep(doppler_cfg, threads));
        break;
    }
    case Figure::Fig9:
    case Figure::Fig10:
    case Figure::Fig12: {
        emit(name + ".csv", run_sweep(preset_config(figure), threads));
        break;
    }
    }

    const std::string sidecar = join_path(output_dir, name + ".meta.txt");
    auto meta = build_metadata(preset_config(figure));
    meta["figure"] = name;
    write_sidecar(sidecar, meta);
    result.files.push_back(sidecar);

    if (emit_plot_script) {
        const std::string script = join_path(output_dir, name + "_plot.py");
        std::vector<std::string> csvs(result.files.begin(), result.files.end() - 1);
        write_plot_script(script, csvs);
        result.files.push_back(script);
    }
    return result;
}

} // namespace lambdacool::sweep
