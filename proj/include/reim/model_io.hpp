#pragma once

#include <string>

#include "reim/core.hpp"

namespace reim {

// JSON layout: {"eta","hi","poles","residues","interp_points"(optional),"meta"}.
// Reals are written with 17 significant digits so load(save(m)) is bit-exact.
void save_model(const ReimModel& model, const std::string& path);
void save_model(const PartialFraction& pf, const Interval& iv, const std::string& path);

ReimModel load_model(const std::string& path);
PartialFraction load_partial_fraction(const std::string& path);

}  // namespace reim
