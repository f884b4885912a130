#ifndef LAMBDACOOL_CONFIG_HPP
#define LAMBDACOOL_CONFIG_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "lambdacool/errors.hpp"

namespace lambdacool::sweep {

// Flat key = value config text, '#' comments, dotted keys, versioned by the
// mandatory `schema = 1` entry. All frequencies are given in Hz; the library
// multiplies by 2*pi on load (every internal rate is angular).

struct CavityConfig {
    double kappa_hz = 0.0;
    double kappa_in_hz = 0.0; // 0 = default kappa/2 (symmetric two-sided cavity)
    double detuning_hz = 0.0;
    double input_power_w = 0.0;
    double wavelength_m = 0.0; // 0 = default 780e-9, recorded as an assumption
    double drive = 0.0;        // sqrt(photons)/s, 0 = derive from power
};

struct MechConfig {
    double omega_m_hz = 0.0;
    double quality_factor = 0.0;
    double g0_hz = 0.0;
    double bath_temperature_k = 0.0;
    double mass_kg = 0.0; // 0 = k_opt reported per unit mass
};

struct EitConfig {
    double n_atoms = 0.0;
    double n_ground = -1.0; // -1 = all atoms in |g>
    double n_meta = 0.0;
    double rabi_control_hz = 0.0;
    double rabi_single_atom_hz = 0.0;
    double gamma_e_hz = 0.0;
    double gamma_gm_hz = 100.0; // typical ground-state coherence decay
    double delta_a_hz = 0.0;
    bool use_general_form = false;
};

struct RirConfig {
    double n_atoms = 0.0;
    double rabi_control_hz = 0.0;
    double rabi_single_atom_hz = 0.0;
    double delta_a_hz = 0.0;
    double omega_r_hz = 0.0;
    double gamma_coh_hz = 0.0;
    double gamma_pop_hz = 0.0; // 0 = gamma_coh / 10 (oracle only)
    double temperature_k = 0.0;
    double gamma_e_hz = 0.0;
    double medium_length_m = 0.0; // kappa_a = c / L
    double input_power_w = 0.0;   // drive entering the medium
    double wavelength_m = 0.0;
    double grid_p_max = 0.0; // 0 = auto
    int grid_points = 0;     // 0 = auto-converge
};

struct PointConfig {
    double delta_cm_tilde_hz = 0.0;
    double delta_ca_hz = 0.0;        // offset under drive-frequency lock
    double delta_two_photon_hz = 0.0; // offset under drive-frequency lock
};

struct RunOptions {
    std::string lock = "drive_frequency"; // or "fixed"
    double photon_cap = 1e12;             // |<c>|^2 above this flags the point
    std::string cascade_baseline = "same_eta_c"; // or "filtered"
    double xi_window = 3.0;                      // |Dtilde| <= window * omega_m
    std::string optimize = "none"; // none | min_n_min | max_gamma_opt
    int scan_points = 601;
};

struct AxisSpec {
    std::string param; // dotted config key of a numeric entry
    double start = 0.0;
    double stop = 0.0;
    int points = 0;
    std::string scale = "linear"; // or "log"
    bool active() const { return !param.empty(); }
};

struct RunConfig {
    int schema = 0;
    std::string scheme;                 // eit_feedback | rir_cascade | bare
    std::string observable = "cooling"; // cooling | chi | field
    CavityConfig cavity_m;
    CavityConfig cavity_a;
    MechConfig mech;
    EitConfig eit;
    RirConfig rir;
    PointConfig point;
    RunOptions run;
    AxisSpec axis1;
    AxisSpec axis2;
    std::string output_path;
    std::map<std::string, std::string> metadata; // meta.* free-form labels
    std::set<std::string> keys_set;
};

// Parse + validate. Unknown keys, duplicate keys and constraint violations
// are hard errors (ParseError with position, or ValidationError with the
// dotted field path).
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

// Set one dotted key (CLI override). Throws ValidationError for unknown keys.
void apply_override(RunConfig& config, const std::string& key, const std::string& value);

// Re-validates a fully assembled config (applied overrides included).
void validate_config(const RunConfig& config);

// All schema keys in declaration order (sweep axis params resolve against
// this list).
std::vector<std::string> schema_keys();

// Read/write any schema key as a string; numeric keys are also reachable as
// doubles for sweeping.
std::string get_key(const RunConfig& config, const std::string& key);
void set_key_double(RunConfig& config, const std::string& key, double value);
bool key_is_numeric(const std::string& key);

// Canonical serialization (every key, schema order, %.17g) used for the
// parameter-set hash and for writing preset files.
std::string canonical_config_string(const RunConfig& config);
std::string config_hash_hex(const RunConfig& config);

} // namespace lambdacool::sweep

#endif
