#pragma once

#include <string>

#include "mesh.hpp"
#include "report.hpp"
#include "scenario.hpp"
#include "suites.hpp"

// Command implementations shared by the C API and the CLI.  Every command is
// deterministic in (scenario, quadrature spec, thread count).

namespace vf4 {

Report cmd_verify(const std::string& suite, const Scenario& s);

/// CSV with header r,mass,ratio,lower_band,upper_band (bands only for the
/// full constructions).  steps >= 1; radii must lie inside the window.
std::string cmd_mass_profile(const Scenario& s, double r_min, double r_max,
                             int steps);

/// First-variation residuals per field; for full constructions the
/// stationarity bounds apply, otherwise quadrature + truncation only.
Report cmd_variation(const Scenario& s, int truncation);

/// Mass comparison of the origin blow-up at `lambda` against the scaling law.
Report cmd_blowup(const Scenario& s, double lambda);

/// Conicity certificates; `index` is the blow-up index i.
Report cmd_certify(const Scenario& s, int index);

std::string cmd_export_mesh(const Scenario& s);

}  // namespace vf4
