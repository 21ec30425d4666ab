#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qbloch/integrators.hpp"

namespace qbloch::cli {

/// Decimal rendering with `precision` significant digits, as printf %.Ng.
std::string format_number(double value, int precision);

/// Column names for a trajectory of `model` whose first state is `sample`.
std::vector<std::string> trajectory_columns(const Model& model, const ModelState& sample);

/// Header row and one row per record.
void write_trajectory_csv(std::ostream& out, const Model& model, const Trajectory& traj,
                          int precision);

} // namespace qbloch::cli
