#pragma once

#include <filesystem>
#include <string>

#include "graphon/report.hpp"

namespace graphon::plot {

enum class PlotKind { Spectrum, Partition, Trajectory };

PlotKind parse_plot_kind(const std::string& name);
const char* to_string(PlotKind kind);

/// Locates the series for `kind` anywhere in the report and renders a standalone SVG.
///   spectrum:   {"eigenvalues": [...], "clusters": [{begin, end, zero}, ...]}
///   partition:  {"block": [[...]], "part_weights": [...]}
///   trajectory: {"N": [...], "eigenvalues": [[...] per N], optional "reference": [...]}
std::string render_svg(const report::Json& doc, PlotKind kind);

void emit_plot(const report::Json& doc, PlotKind kind, const std::filesystem::path& path);

}  // namespace graphon::plot
