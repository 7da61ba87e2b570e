#pragma once

// CSV and SVG writers. Numbers in CSV files are printed with 17 significant
// digits; every writer is byte-deterministic for a given input.

#include <ostream>
#include <string>

#include "revolt/explore.hpp"
#include "revolt/integrate.hpp"

namespace revolt {

/// %.17g, with "nan" for NaN.
std::string format_number(double v);

/// Columns t,SB,SR,CR,CB (plus S for the opportunistic model), then a
/// trailing "# terminal: ..." comment line.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Columns axis1,axis2,outcome_tag,blue_fraction, one row per cell in
/// row-major order, then a "# axis1=... axis2=..." comment line.
void write_grid_csv(std::ostream& out, const SweepGrid& grid);

/// Columns axis1,axis2,attractor for every basin cell, then an axis comment.
void write_basin_csv(std::ostream& out, const BasinMap& map);

/// Columns SB0,CR0,S0,bracket_width,row for every separatrix sample.
void write_separatrix_csv(std::ostream& out, const BasinMap& map);

/// Heatmap of outcome tags: blue, red and gray for the three outcomes, white
/// for dominance-excluded cells, amber for cells on a threshold.
void write_outcome_svg(std::ostream& out, const SweepGrid& grid);

/// Heatmap of the Blue-controlled fraction, red (0) through blue (1).
void write_surface_svg(std::ostream& out, const SweepGrid& grid);

/// Basin slice heatmap with the separatrix samples overlaid.
void write_basin_svg(std::ostream& out, const BasinMap& map);

}  // namespace revolt
