/** Trajectory records produced by the shooting solvers.
 *
 * Rows carry the integration time, the raw solver state, the reconstructed
 * geometric data (arclength r, warped radius psi, density v or potential
 * phi), the Lyapunov-type monitor kappa, the invariant-sphere defect (zero
 * for solvers without a sphere constraint), and the first-integral
 * residual.  CSV export writes one header line and 17-significant-digit
 * columns; the column set is fixed so downstream tooling can rely on it.
 */
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace qesmms {

struct TrajectoryRow {
  double t = 0.0;
  std::vector<double> state;
  double r = 0.0;
  double psi = 0.0;
  double density = 0.0;  // v, or phi at |m| = inf
  double kappa = 0.0;
  double sphere_defect = 0.0;
  double integrability_residual = 0.0;
};

struct Trajectory {
  std::vector<std::string> state_names;
  std::string density_name = "v";
  std::vector<TrajectoryRow> rows;
  nlohmann::json meta;  // family name, parameters, fitted constants

  void write_csv(std::ostream& os) const;
};

}  // namespace qesmms
