#ifndef LAMBDACOOL_PRESETS_HPP
#define LAMBDACOOL_PRESETS_HPP

#include <string>
#include <vector>

#include "lambdacool/config.hpp"

namespace lambdacool::sweep {

// Figure-reproduction presets. Each carries its figure's operating
// parameters; the handful of values the presets must choose (wavelength,
// gamma_gm, carrier placement) are recorded as assumptions in the output metadata.
enum class Figure { Fig3, Fig4, Fig5, Fig6, Fig8, Fig9, Fig10, Fig11, Fig12 };

// Accepts "fig3" .. "fig12"; figures without data (schematics) throw
// UnknownFigure.
Figure figure_from_string(const std::string& name);
std::string figure_name(Figure figure);

// The preset's base RunConfig (also the content of the shipped .cfg files).
RunConfig preset_config(Figure figure);

struct ReproduceResult {
    std::vector<std::string> files; // CSVs + sidecar metadata, in write order
};

// Emits the figure's data as CSV plus a sidecar .meta.txt; optionally a
// generic plotting script.
ReproduceResult reproduce(Figure figure, const std::string& output_dir,
                          bool emit_plot_script = false, int threads = 0);

} // namespace lambdacool::sweep

#endif
