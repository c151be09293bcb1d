// Shared fixtures: the standard greedy models are expensive enough to build
// that each test binary constructs them once.
#pragma once

#include "reim/greedy.hpp"

namespace reim::testing {

inline const ReimModel& power_model() {
    static const ReimModel model = build_model(ReimConfig::power_preset(Interval(1e-6, 1.0)));
    return model;
}

inline const ReimModel& shifted_model() {
    static const ReimModel model = build_model(ReimConfig::shifted_preset(Interval(1e-6, 1.0)));
    return model;
}

inline const ReimModel& matfun_model() {
    static const ReimModel model = build_model(ReimConfig::matfun_preset());
    return model;
}

inline const SampleGrid& dense_grid() {
    static const SampleGrid grid = geometric_grid(Interval(1e-6, 1.0), 10000);
    return grid;
}

}  // namespace reim::testing
