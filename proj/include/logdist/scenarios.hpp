#pragma once

#include <string>
#include <vector>

#include "logdist/simulation.hpp"

namespace logdist {

/// Scenario ids in canonical order: GT, SEQ, S-G, ARR, DUR, RC, CAL, EXT.
const std::vector<std::string>& scenario_names();

/// The desk-scale loan-application model (GT) or one of its seven
/// perturbations. Each perturbed model differs from GT only in the fields
/// its scenario targets. Throws ParameterError for an unknown name.
BpsModel scenario(const std::string& name);

}  // namespace logdist
