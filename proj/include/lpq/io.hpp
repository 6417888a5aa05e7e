#pragma once

#include "lpq/asymptotics.hpp"
#include "lpq/geometry.hpp"
#include "lpq/rayleigh.hpp"

#include <string>
#include <vector>

namespace lpq {

/// ScalarField CSV: header `i,j,x,y,value` on planar grids, `i,r,value` on
/// radial grids. Row order follows the interior node numbering.
void write_field_csv(const std::string& path, const ScalarField& field);

/// Read a field back onto the grid it was written from (schema + node count
/// must match).
ScalarField read_field_csv(const std::string& path, const GridPtr& grid);

/// p-sweep CSV: `p,q,lambda,tv_u,profile_err,iters,converged`.
void write_p_sweep_csv(const std::string& path, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_p_sweep_csv(const std::string& path);

/// beta-sweep CSV: `beta,tv_U,sup_err_U,sup_err_V,v_max,lambda_used,iters`.
void write_beta_sweep_csv(const std::string& path, const std::vector<BetaSweepRecord>& records);
std::vector<BetaSweepRecord> read_beta_sweep_csv(const std::string& path);

/// Static SVG line chart of (x, y) series (log-y when all values positive and
/// spread over decades).
void write_svg_line_chart(const std::string& path, const std::string& title,
                          const std::vector<double>& x, const std::vector<double>& y,
                          const std::string& x_label, const std::string& y_label);

/// Static SVG heatmap of a planar field (one rect per interior node).
void write_svg_heatmap(const std::string& path, const std::string& title, const ScalarField& field);

} // namespace lpq
