// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reach/model.hpp"

namespace reach {
namespace oracle {

/// High-resolution simulated execution. Deliberately shares no code with the
/// flow propagation used by the reach-set engine: integration is fixed-step
/// RK4, event times are bisected against the invariant sets.
struct Sample {
    double t = 0.0;
    Vec x;
    std::size_t location = 0;
};

struct Event {
    double t = 0.0;
    std::size_t from = 0;
    std::size_t to = 0;
    Vec x;  ///< crossing point
};

struct Trace {
    std::vector<Sample> samples;  ///< strictly increasing times
    std::vector<Event> events;
    bool zeno_suspected = false;  ///< two events closer than 1e-9
};

class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fixed-step RK4 execution from `init` until min(T, time of the N-th
/// transition). Invariant exits are bisected to 1e-12 time tolerance; the
/// next location must be the unique other invariant containing the crossing
/// point, otherwise a SimulationError is raised.
Trace simulate(const LhaModel& model, const InitialCondition& init, double T, std::uint64_t N,
               double step = 1e-4);

/// Time at which the execution first crosses the given facet plane, refined
/// by bisection; throws SimulationError if it never does before T.
double crossing_time(const LhaModel& model, const InitialCondition& init, const Halfspace& facet,
                     double T, double step = 1e-4);

}  // namespace oracle
}  // namespace reach
