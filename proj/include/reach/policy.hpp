// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "reach/engine.hpp"

namespace reach {

struct PolicyConfig {
    double delta = 1e-5;    ///< radius of the initial ball
    int max_retries = 20;   ///< per-step retry budget
    double shrink = 0.5;    ///< geometric retry factor
};

struct PolicyDecision {
    std::uint64_t resume_step = 0;
    double delta = 0.0;
    double gamma = 0.0;
    double h = 0.0;
    bool give_up = false;
    std::string reason;  ///< set when giving up
};

/// Chooses (k, delta, gamma, h) for each step and reacts to engine errors.
class Policy {
public:
    virtual ~Policy() = default;
    virtual double initial_delta() const = 0;
    virtual PolicyDecision propose(std::uint64_t k, const ReachStep& last,
                                   const EngineError* failure, const LhaModel& model,
                                   const NumericsBudget& budget) = 0;
};

/// The shipped default: delta fixed, gamma = (epsilon - dia_rho)/2 computed
/// from the previous step's rho-inflated diameter, h = (gamma/2)/vbar. On
/// failure the step is retried with h (and, except for StepTooLarge, gamma)
/// shrunk geometrically; gives up past the retry budget or when no positive
/// gamma is admissible.
class DefaultPolicy : public Policy {
public:
    DefaultPolicy(PolicyConfig cfg, double epsilon);

    double initial_delta() const override { return cfg_.delta; }
    PolicyDecision propose(std::uint64_t k, const ReachStep& last, const EngineError* failure,
                           const LhaModel& model, const NumericsBudget& budget) override;

    int retries_at(std::uint64_t k) const { return k == retry_step_ ? retries_ : 0; }

protected:
    PolicyConfig cfg_;
    double epsilon_;
    std::uint64_t retry_step_ = 0;
    int retries_ = 0;
    std::uint64_t last_k_ = 0;

    /// Retry shrink hook; derived policies may also adjust delta.
    virtual void adjust(PolicyDecision& d, const EngineError& failure) const;
};

/// Variant that additionally shrinks delta once half the retry budget is
/// spent; a delta change forces the engine to recompute the log from the new
/// initial ball.
class DeltaShrinkPolicy : public DefaultPolicy {
public:
    using DefaultPolicy::DefaultPolicy;

protected:
    void adjust(PolicyDecision& d, const EngineError& failure) const override;
};

}  // namespace reach
