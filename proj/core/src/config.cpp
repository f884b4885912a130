#include "lambdacool/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <variant>

#include "lambdacool/csv.hpp"

namespace lambdacool::sweep {

namespace {

using DGet = double* (*)(RunConfig&);
using IGet = int* (*)(RunConfig&);
using BGet = bool* (*)(RunConfig&);
using SGet = std::string* (*)(RunConfig&);

struct KeySpec {
    const char* key;
    std::variant<DGet, IGet, BGet, SGet> access;
};

#define KEY_D(name, expr) KeySpec{name, DGet{+[](RunConfig& c) -> double* { return &(expr); }}}
#define KEY_I(name, expr) KeySpec{name, IGet{+[](RunConfig& c) -> int* { return &(expr); }}}
#define KEY_B(name, expr) KeySpec{name, BGet{+[](RunConfig& c) -> bool* { return &(expr); }}}
#define KEY_S(name, expr) \
    KeySpec{name, SGet{+[](RunConfig& c) -> std::string* { return &(expr); }}}

const std::vector<KeySpec>& table() {
    static const std::vector<KeySpec> t = {
        KEY_I("schema", c.schema),
        KEY_S("scheme", c.scheme),
        KEY_S("observable", c.observable),

        KEY_D("cavity_m.kappa_hz", c.cavity_m.kappa_hz),
        KEY_D("cavity_m.kappa_in_hz", c.cavity_m.kappa_in_hz),
        KEY_D("cavity_m.detuning_hz", c.cavity_m.detuning_hz),
        KEY_D("cavity_m.input_power_w", c.cavity_m.input_power_w),
        KEY_D("cavity_m.wavelength_m", c.cavity_m.wavelength_m),
        KEY_D("cavity_m.drive", c.cavity_m.drive),

        KEY_D("cavity_a.kappa_hz", c.cavity_a.kappa_hz),
        KEY_D("cavity_a.kappa_in_hz", c.cavity_a.kappa_in_hz),
        KEY_D("cavity_a.detuning_hz", c.cavity_a.detuning_hz),
        KEY_D("cavity_a.input_power_w", c.cavity_a.input_power_w),
        KEY_D("cavity_a.wavelength_m", c.cavity_a.wavelength_m),
        KEY_D("cavity_a.drive", c.cavity_a.drive),

        KEY_D("mech.omega_m_hz", c.mech.omega_m_hz),
        KEY_D("mech.quality_factor", c.mech.quality_factor),
        KEY_D("mech.g0_hz", c.mech.g0_hz),
        KEY_D("mech.bath_temperature_k", c.mech.bath_temperature_k),
        KEY_D("mech.mass_kg", c.mech.mass_kg),

        KEY_D("eit.n_atoms", c.eit.n_atoms),
        KEY_D("eit.n_ground", c.eit.n_ground),
        KEY_D("eit.n_meta", c.eit.n_meta),
        KEY_D("eit.rabi_control_hz", c.eit.rabi_control_hz),
        KEY_D("eit.rabi_single_atom_hz", c.eit.rabi_single_atom_hz),
        KEY_D("eit.gamma_e_hz", c.eit.gamma_e_hz),
        KEY_D("eit.gamma_gm_hz", c.eit.gamma_gm_hz),
        KEY_D("eit.delta_a_hz", c.eit.delta_a_hz),
        KEY_B("eit.use_general_form", c.eit.use_general_form),

        KEY_D("rir.n_atoms", c.rir.n_atoms),
        KEY_D("rir.rabi_control_hz", c.rir.rabi_control_hz),
        KEY_D("rir.rabi_single_atom_hz", c.rir.rabi_single_atom_hz),
        KEY_D("rir.delta_a_hz", c.rir.delta_a_hz),
        KEY_D("rir.omega_r_hz", c.rir.omega_r_hz),
        KEY_D("rir.gamma_coh_hz", c.rir.gamma_coh_hz),
        KEY_D("rir.gamma_pop_hz", c.rir.gamma_pop_hz),
        KEY_D("rir.temperature_k", c.rir.temperature_k),
        KEY_D("rir.gamma_e_hz", c.rir.gamma_e_hz),
        KEY_D("rir.medium_length_m", c.rir.medium_length_m),
        KEY_D("rir.input_power_w", c.rir.input_power_w),
        KEY_D("rir.wavelength_m", c.rir.wavelength_m),
        KEY_D("rir.grid_p_max", c.rir.grid_p_max),
        KEY_I("rir.grid_points", c.rir.grid_points),

        KEY_D("point.delta_cm_tilde_hz", c.point.delta_cm_tilde_hz),
        KEY_D("point.delta_ca_hz", c.point.delta_ca_hz),
        KEY_D("point.delta_two_photon_hz", c.point.delta_two_photon_hz),

        KEY_S("run.lock", c.run.lock),
        KEY_D("run.photon_cap", c.run.photon_cap),
        KEY_S("run.cascade_baseline", c.run.cascade_baseline),
        KEY_D("run.xi_window", c.run.xi_window),
        KEY_S("run.optimize", c.run.optimize),
        KEY_I("run.scan_points", c.run.scan_points),

        KEY_S("sweep.axis1.param", c.axis1.param),
        KEY_D("sweep.axis1.start", c.axis1.start),
        KEY_D("sweep.axis1.stop", c.axis1.stop),
        KEY_I("sweep.axis1.points", c.axis1.points),
        KEY_S("sweep.axis1.scale", c.axis1.scale),
        KEY_S("sweep.axis2.param", c.axis2.param),
        KEY_D("sweep.axis2.start", c.axis2.start),
        KEY_D("sweep.axis2.stop", c.axis2.stop),
        KEY_I("sweep.axis2.points", c.axis2.points),
        KEY_S("sweep.axis2.scale", c.axis2.scale),

        KEY_S("output.path", c.output_path),
    };
    return t;
}

#undef KEY_D
#undef KEY_I
#undef KEY_B
#undef KEY_S

const KeySpec* find_key(const std::string& key) {
    for (const auto& spec : table())
        if (key == spec.key)
            return &spec;
    return nullptr;
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

void set_value(RunConfig& config, const KeySpec& spec, const std::string& raw, int line,
               int column) {
    if (const auto* get = std::get_if<DGet>(&spec.access)) {
        char* end = nullptr;
        const double v = std::strtod(raw.c_str(), &end);
        if (end == raw.c_str() || *end != '\0')
            throw ParseError(line, column, "expected a number for '" + std::string(spec.key) + "'");
        *(*get)(config) = v;
    } else if (const auto* geti = std::get_if<IGet>(&spec.access)) {
        char* end = nullptr;
        const long v = std::strtol(raw.c_str(), &end, 10);
        if (end == raw.c_str() || *end != '\0')
            throw ParseError(line, column,
                             "expected an integer for '" + std::string(spec.key) + "'");
        *(*geti)(config) = static_cast<int>(v);
    } else if (const auto* getb = std::get_if<BGet>(&spec.access)) {
        if (raw == "true")
            *(*getb)(config) = true;
        else if (raw == "false")
            *(*getb)(config) = false;
        else
            throw ParseError(line, column,
                             "expected true/false for '" + std::string(spec.key) + "'");
    } else {
        *std::get<SGet>(spec.access)(config) = raw;
    }
}

void set_one(RunConfig& config, const std::string& key, const std::string& value, int line,
             int column) {
    if (key.rfind("meta.", 0) == 0) {
        const std::string name = key.substr(5);
        if (name.empty())
            throw ParseError(line, column, "empty metadata key");
        if (!config.metadata.emplace(name, value).second)
            throw ParseError(line, column, "duplicate key '" + key + "'");
        return;
    }
    const KeySpec* spec = find_key(key);
    if (!spec)
        throw ValidationError(key, "unknown config key");
    if (!config.keys_set.insert(key).second)
        throw ParseError(line, column, "duplicate key '" + key + "'");
    set_value(config, *spec, value, line, column);
}

bool is_set(const RunConfig& config, const char* key) {
    return config.keys_set.count(key) > 0;
}

void require(const RunConfig& config, const char* key, const char* why) {
    if (!is_set(config, key))
        throw ValidationError(key, std::string("required ") + why);
}

void check_enum(const std::string& value, std::initializer_list<const char*> allowed,
                const char* key) {
    for (const char* a : allowed)
        if (value == a)
            return;
    std::string msg = "must be one of {";
    bool first = true;
    for (const char* a : allowed) {
        if (!first)
            msg += ", ";
        msg += a;
        first = false;
    }
    msg += "}";
    throw ValidationError(key, msg);
}

void check_axis(const RunConfig& config, const AxisSpec& axis, const char* prefix) {
    if (!axis.active())
        return;
    if (!key_is_numeric(axis.param))
        throw ValidationError(std::string(prefix) + ".param",
                              "'" + axis.param + "' is not a sweepable numeric key");
    if (axis.points < 2)
        throw ValidationError(std::string(prefix) + ".points", "must be >= 2");
    if (axis.start == axis.stop)
        throw ValidationError(std::string(prefix) + ".start", "start must differ from stop");
    check_enum(axis.scale, {"linear", "log"}, (std::string(prefix) + ".scale").c_str());
    if (axis.scale == "log" && (axis.start <= 0.0 || axis.stop <= 0.0))
        throw ValidationError(std::string(prefix) + ".start",
                              "log scale requires positive endpoints");
    (void)config;
}

void check_cavity(const RunConfig& config, const CavityConfig& cav, const std::string& prefix,
                  bool needs_drive) {
    if (is_set(config, (prefix + ".kappa_hz").c_str()) && cav.kappa_hz <= 0.0)
        throw NonPositiveLinewidth(prefix + ".kappa_hz");
    const double kin = cav.kappa_in_hz > 0.0 ? cav.kappa_in_hz : 0.5 * cav.kappa_hz;
    if (cav.kappa_hz > 0.0 && kin > cav.kappa_hz)
        throw InputCouplingExceedsTotal(prefix + ".kappa_in_hz");
    if (cav.input_power_w < 0.0)
        throw NegativePower(prefix + ".input_power_w");
    if (cav.drive < 0.0)
        throw NegativePower(prefix + ".drive");
    if (needs_drive && cav.input_power_w == 0.0 && cav.drive == 0.0)
        throw ValidationError(prefix + ".input_power_w",
                              "either input_power_w or drive must be given");
}

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig config;
    std::istringstream in(text);
    std::string raw_line;
    int line_no = 0;
    while (std::getline(in, raw_line)) {
        ++line_no;
        std::string line = raw_line;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(line_no, 1, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ParseError(line_no, 1, "empty key");
        if (value.empty())
            throw ParseError(line_no, static_cast<int>(eq) + 2, "empty value");
        set_one(config, key, value, line_no, static_cast<int>(eq) + 2);
    }
    (void)origin;
    validate_config(config);
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("config", "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

void apply_override(RunConfig& config, const std::string& key, const std::string& value) {
    if (key.rfind("meta.", 0) == 0) {
        config.metadata[key.substr(5)] = value;
        return;
    }
    const KeySpec* spec = find_key(key);
    if (!spec)
        throw ValidationError(key, "unknown config key");
    config.keys_set.insert(key);
    set_value(config, *spec, value, 0, 0);
}

void validate_config(const RunConfig& config) {
    if (config.schema != 1)
        throw ValidationError("schema", "missing or unsupported (expected schema = 1)");
    require(config, "scheme", "for every run");
    check_enum(config.scheme, {"eit_feedback", "rir_cascade", "bare"}, "scheme");
    check_enum(config.observable, {"cooling", "chi", "field"}, "observable");
    check_enum(config.run.lock, {"drive_frequency", "fixed"}, "run.lock");
    check_enum(config.run.cascade_baseline, {"same_eta_c", "filtered"}, "run.cascade_baseline");
    check_enum(config.run.optimize, {"none", "min_n_min", "max_gamma_opt"}, "run.optimize");
    if (config.run.photon_cap <= 0.0)
        throw ValidationError("run.photon_cap", "must be > 0");
    if (config.run.xi_window <= 0.0)
        throw ValidationError("run.xi_window", "must be > 0");
    if (config.run.scan_points < 3)
        throw ValidationError("run.scan_points", "must be >= 3");

    if (config.axis2.active() && !config.axis1.active())
        throw ValidationError("sweep.axis2.param", "axis2 requires axis1");
    check_axis(config, config.axis1, "sweep.axis1");
    check_axis(config, config.axis2, "sweep.axis2");

    const bool cooling = config.observable == "cooling";
    const bool field = config.observable == "field";

    if (cooling) {
        require(config, "mech.omega_m_hz", "for cooling runs");
        require(config, "mech.quality_factor", "for cooling runs");
        require(config, "mech.g0_hz", "for cooling runs");
        require(config, "mech.bath_temperature_k", "for cooling runs");
        require(config, "cavity_m.kappa_hz", "for cooling runs");
        check_cavity(config, config.cavity_m, "cavity_m", config.scheme != "rir_cascade");
        if (config.mech.omega_m_hz <= 0.0)
            throw ValidationError("mech.omega_m_hz", "must be > 0");
        if (config.mech.quality_factor <= 0.0)
            throw ValidationError("mech.quality_factor", "must be > 0");
    } else {
        check_cavity(config, config.cavity_m, "cavity_m", false);
    }

    if (config.scheme == "eit_feedback" || (config.observable != "cooling" &&
                                            is_set(config, "eit.n_atoms"))) {
        require(config, "eit.n_atoms", "for the EIT medium");
        require(config, "eit.rabi_control_hz", "for the EIT medium");
        require(config, "eit.rabi_single_atom_hz", "for the EIT medium");
        require(config, "eit.gamma_e_hz", "for the EIT medium");
        require(config, "eit.delta_a_hz", "for the EIT medium");
        if (config.eit.gamma_e_hz <= 0.0)
            throw ValidationError("eit.gamma_e_hz", "must be > 0");
        if (config.eit.gamma_gm_hz < 0.0)
            throw ValidationError("eit.gamma_gm_hz", "must be >= 0");
        if (config.eit.n_meta != 0.0 && !config.eit.use_general_form)
            throw ValidationError("eit.n_meta", "N_m != 0 requires eit.use_general_form");
    }
    if (config.scheme == "eit_feedback" && (cooling || field)) {
        require(config, "cavity_a.kappa_hz", "for the EIT feedback cavity");
        check_cavity(config, config.cavity_a, "cavity_a", field && !cooling);
    }

    if (config.scheme == "rir_cascade" || (config.observable != "cooling" &&
                                           is_set(config, "rir.n_atoms"))) {
        for (const char* k :
             {"rir.n_atoms", "rir.rabi_control_hz", "rir.rabi_single_atom_hz", "rir.delta_a_hz",
              "rir.omega_r_hz", "rir.gamma_coh_hz", "rir.temperature_k", "rir.gamma_e_hz",
              "rir.medium_length_m"})
            require(config, k, "for the RIR medium");
        if (config.rir.omega_r_hz <= 0.0)
            throw ValidationError("rir.omega_r_hz", "must be > 0");
        if (config.rir.gamma_coh_hz <= 0.0)
            throw ValidationError("rir.gamma_coh_hz", "must be > 0");
        if (config.rir.temperature_k <= 0.0)
            throw ValidationError("rir.temperature_k", "must be > 0");
        if (config.rir.medium_length_m <= 0.0)
            throw ValidationError("rir.medium_length_m", "must be > 0");
        if (config.rir.delta_a_hz == 0.0)
            throw ValidationError("rir.delta_a_hz", "must be nonzero");
        if (config.rir.grid_points != 0 &&
            (config.rir.grid_points < 3 || config.rir.grid_points % 2 == 0))
            throw ValidationError("rir.grid_points", "must be odd and >= 3 (or 0 for auto)");
    }
    if (config.scheme == "rir_cascade" && (cooling || field)) {
        require(config, "rir.input_power_w", "to drive the RIR medium");
        if (config.rir.input_power_w < 0.0)
            throw NegativePower("rir.input_power_w");
    }
}

std::vector<std::string> schema_keys() {
    std::vector<std::string> keys;
    keys.reserve(table().size());
    for (const auto& spec : table())
        keys.emplace_back(spec.key);
    return keys;
}

bool key_is_numeric(const std::string& key) {
    const KeySpec* spec = find_key(key);
    return spec && std::holds_alternative<DGet>(spec->access);
}

void set_key_double(RunConfig& config, const std::string& key, double value) {
    const KeySpec* spec = find_key(key);
    if (!spec || !std::holds_alternative<DGet>(spec->access))
        throw ValidationError(key, "not a sweepable numeric key");
    *std::get<DGet>(spec->access)(config) = value;
    config.keys_set.insert(key);
}

std::string get_key(const RunConfig& config, const std::string& key) {
    const KeySpec* spec = find_key(key);
    if (!spec)
        throw ValidationError(key, "unknown config key");
    RunConfig& mutable_config = const_cast<RunConfig&>(config);
    if (const auto* get = std::get_if<DGet>(&spec->access))
        return format_double(*(*get)(mutable_config));
    if (const auto* geti = std::get_if<IGet>(&spec->access))
        return std::to_string(*(*geti)(mutable_config));
    if (const auto* getb = std::get_if<BGet>(&spec->access))
        return *(*getb)(mutable_config) ? "true" : "false";
    return *std::get<SGet>(spec->access)(mutable_config);
}

std::string canonical_config_string(const RunConfig& config) {
    std::string out;
    RunConfig& mutable_config = const_cast<RunConfig&>(config);
    char buf[64];
    for (const auto& spec : table()) {
        out += spec.key;
        out += " = ";
        if (const auto* get = std::get_if<DGet>(&spec.access)) {
            std::snprintf(buf, sizeof buf, "%.17g", *(*get)(mutable_config));
            out += buf;
        } else if (const auto* geti = std::get_if<IGet>(&spec.access)) {
            out += std::to_string(*(*geti)(mutable_config));
        } else if (const auto* getb = std::get_if<BGet>(&spec.access)) {
            out += *(*getb)(mutable_config) ? "true" : "false";
        } else {
            const std::string& s = *std::get<SGet>(spec.access)(mutable_config);
            out += s.empty() ? "-" : s;
        }
        out += '\n';
    }
    for (const auto& [k, v] : config.metadata)
        out += "meta." + k + " = " + v + "\n";
    return out;
}

std::string config_hash_hex(const RunConfig& config) {
    return to_hex(fnv1a64(canonical_config_string(config)));
}

} // namespace lambdacool::sweep
