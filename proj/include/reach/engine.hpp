// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reach/geometry.hpp"
#include "reach/model.hpp"

namespace reach {

/// Per-step parameters chosen by the policy.
struct StepParams {
    double delta = 0.0;
    double gamma = 0.0;
    double h = 0.0;
};

/// One record of the Reached log. d_hat over-approximates the states reached
/// at time t from the initial ball; d_hat_gamma is its gamma-neighborhood,
/// and the union of the gamma polytopes over all steps is the computed reach
/// set. rho accumulates the numeric error charged so far.
struct ReachStep {
    std::uint64_t k = 0;
    double t = 0.0;
    std::size_t location = 0;
    Polytope d_hat;
    Polytope d_hat_gamma;
    double rho = 0.0;
    std::uint64_t jump_count = 0;
    StepParams params;
    /// Accumulated clock uncertainty: trajectories cross a facet at
    /// different instants inside a jump bracket but are re-anchored to one
    /// instant, so after each jump the stored times are only accurate to the
    /// sum of the preceding bracket widths.
    double t_slop = 0.0;
};

/// A failed step, fed back to the policy so it can retry with new
/// parameters. Each kind corresponds to one abort branch of the stepper.
struct EngineError {
    enum class Kind {
        StepTooLarge,
        DiameterExceeded,
        InvariantStraddle,
        NondeterministicTransition,
        NontransversalTransition,
    };
    Kind kind = Kind::InvariantStraddle;
    std::uint64_t step = 0;
    std::string detail;
};

const char* to_string(EngineError::Kind kind);

/// A committed discrete transition: the refined time bracket that provably
/// contains every crossing time out of the initial ball, and the
/// over-approximate crossing set on the shared facet.
struct TransitionRecord {
    std::size_t from = 0;
    std::size_t to = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    Polytope crossing_set;
    std::uint64_t jump_index = 0;  ///< 1-based
    std::uint64_t step = 0;        ///< step at which the jump was committed
};

/// Reach-set query: horizon T, jump bound N, approximation bound epsilon.
struct Problem {
    double T = 0.0;
    std::uint64_t N = 0;
    double epsilon = 0.0;
};

struct EngineConfig {
    double epsilon_trans = 1e-6;   ///< transversality margin
    int refine_subdivisions = 64;  ///< M of the bracket refinement
    std::uint64_t max_steps = 1000000;
};

enum class Termination { TimeBound, JumpBound, PolicyExhausted, MaxStepsExceeded };
const char* to_string(Termination t);

/// Diagnostics: one entry per rejected step attempt.
struct FailureEvent {
    std::uint64_t step = 0;
    EngineError::Kind kind = EngineError::Kind::InvariantStraddle;
    int retry = 0;
    std::string detail;
};

struct ReachResult {
    std::vector<ReachStep> steps;  ///< Reached log; index 0 is the seed record
    std::vector<TransitionRecord> transitions;
    std::vector<FailureEvent> failures;
    Termination termination = Termination::TimeBound;
    std::string termination_detail;
    double t_f = 0.0;
    std::uint64_t jumps = 0;
    double final_rho = 0.0;
    std::uint64_t step_count = 0;  ///< committed steps, seed excluded
};

/// Either the committed step (plus transition, when one was taken) or the
/// error that aborted the attempt.
struct PostOutcome {
    std::optional<ReachStep> step;
    std::optional<TransitionRecord> transition;
    std::optional<EngineError> error;
};

/// One stepper invocation: propagate the previous region over h under the
/// current location's dynamics, hull, inflate by gamma, charge mu_x to rho,
/// enforce the step-size and diameter conditions, and classify against the
/// invariant (stay / jump / abort).
PostOutcome post(const ReachStep& prev, const StepParams& params, const LhaModel& model,
                 const NumericsBudget& budget, const Problem& problem, const EngineConfig& cfg,
                 double mu_x, double vbar);

/// True iff the step pair certifies a discrete transition out of `loc`:
/// previous region strictly interior, current region disjoint from the
/// closed invariant.
bool detect_transition(const Polytope& prev_d_rho, const Polytope& cur_d_rho, std::size_t loc,
                       const LhaModel& model);

struct DeterminismCheck {
    std::optional<std::size_t> to;
    std::string detail;
};

/// The unique location (other than `from`) whose invariant interior contains
/// the crossed region; unset with a diagnostic when none or several qualify.
DeterminismCheck check_deterministic(const Polytope& cur_d_rho, std::size_t from,
                                     const LhaModel& model);

struct TransversalityCheck {
    bool pass = false;
    std::string detail;
};

/// Finite-precision transversality conditions on the crossing set j_hat:
/// (i) h small against the crossing-set diameter, (ii) the inflated crossing
/// set stays inside the union of the two invariants, (iii) both vector
/// fields leave `from` with margin epsilon_trans at the inflated crossing
/// set's vertices.
TransversalityCheck check_transversal(const Polytope& j_hat, std::size_t from, std::size_t to,
                                      double h, double rho, const LhaModel& model,
                                      double epsilon_trans);

struct RefineOutcome {
    bool ok = false;
    TransitionRecord record;
    double anchor = 0.0;  ///< absolute instant the crossing set was built at
    std::string detail;
};

/// Bracket refinement: subdivide the step interval into `subdivisions`
/// pieces, find where the invariant-overlap volume dominance flips, and
/// build a tight crossing set from the (gamma' + rho)-inflation at the flip,
/// gamma' = 2 * dt * vbar. The recorded bracket spans from the last
/// sub-instant provably interior to the first provably outside.
RefineOutcome refine_transition(const ReachStep& prev, const StepParams& params, std::size_t from,
                                std::size_t to, const LhaModel& model, double rho_k, double vbar,
                                int subdivisions);

class Policy;

/// Full bounded reach-set computation: drives post() under policy-supplied
/// parameters, retrying failed steps with the policy's adjusted values, until
/// the time or jump bound is hit, the policy gives up, or the step cap trips.
ReachResult run(const LhaModel& model, const InitialCondition& init, const Problem& problem,
                Policy& policy, const NumericsBudget& budget, const EngineConfig& cfg = {});

}  // namespace reach
