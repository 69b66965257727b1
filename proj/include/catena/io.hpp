#pragma once

#include <string>
#include <vector>

#include "catena/analytic.hpp"
#include "catena/bvp.hpp"
#include "catena/chain.hpp"
#include "catena/critical.hpp"
#include "catena/ode.hpp"

namespace catena {

/// Round-trip-exact decimal text for a double (shortest %.17g form).
std::string format_full(double v);

// CSV writers. All numeric columns use full round-trip precision.

/// Columns: s, alpha, T, x, y.
std::string trajectory_csv(const std::vector<StringState>& states);

/// Columns: index, alpha_star, multiplicity (1 simple, 2 double).
std::string roots_csv(const CriticalSet& cs);

/// Columns: ratio, root_index, alpha_star, multiplicity.
std::string bifurcation_csv(const std::vector<BifurcationPoint>& table);

/// Columns: ratio, bead_index, x, y, vx, vy, converged.
std::string sweep_csv(const SweepRecord& record);
std::string snapshot_csv(double ratio, const ChainState& state, bool converged);

/// Columns: x, y.
std::string polyline_csv(const std::vector<Vec2>& points);

/// One-line JSON object: status, alpha0_init, T0, residual.
std::string bvp_status_json(const BvpSolution& solution);

const char* to_string(BvpStatus status);

// Minimal SVG plots (self-contained, no dependencies).

/// Single polyline with support markers.
std::string polyline_svg(const std::vector<Vec2>& points, double width = 640.0);

/// One small frame per snapshot, arranged in a vertical filmstrip with the
/// ratio printed next to each frame.
std::string filmstrip_svg(const SweepRecord& record, double frame_width = 320.0);

/// Write text to a file, creating parent directories as needed.
void write_file(const std::string& path, const std::string& content);

}  // namespace catena
