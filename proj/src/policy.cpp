// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
#include "reach/policy.hpp"

#include <cmath>

namespace reach {

DefaultPolicy::DefaultPolicy(PolicyConfig cfg, double epsilon) : cfg_(cfg), epsilon_(epsilon) {
    if (!(cfg_.delta > 0.0)) throw std::invalid_argument("policy: delta must be > 0");
    if (!(cfg_.shrink > 0.0 && cfg_.shrink < 1.0))
        throw std::invalid_argument("policy: shrink factor must be in (0, 1)");
    if (cfg_.max_retries < 0) throw std::invalid_argument("policy: max_retries must be >= 0");
    if (!(epsilon_ > 0.0)) throw std::invalid_argument("policy: epsilon must be > 0");
}

PolicyDecision DefaultPolicy::propose(std::uint64_t k, const ReachStep& last,
                                      const EngineError* failure, const LhaModel& model,
                                      const NumericsBudget& budget) {
    if (k < last_k_) throw std::logic_error("policy: step index must be non-decreasing");
    last_k_ = k;

    if (failure) {
        if (retry_step_ == k)
            ++retries_;
        else {
            retry_step_ = k;
            retries_ = 1;
        }
    } else {
        retry_step_ = k;
        retries_ = 0;
    }

    PolicyDecision d;
    d.resume_step = k;
    d.delta = cfg_.delta;

    // Estimate the current step's rho-inflated diameter from the previous
    // one: one flow step grows a diameter by at most |e^{Ah}| <= e^{|A| h},
    // and the policy's own h never exceeds epsilon/(4 vbar).
    const double vbar = v_bar(model);
    double a_max = 0.0;
    for (const auto& l : model.locations()) a_max = std::max(a_max, l.A.inf_norm());
    const double growth = std::exp(a_max * epsilon_ / (4.0 * vbar));
    const double rho_next = last.rho + compute_mu_x(budget, model);
    const double dia_rho = diameter(last.d_hat) * growth + 2.0 * rho_next;

    d.gamma = (epsilon_ - dia_rho) / 2.0;
    if (!(d.gamma > 0.0)) {
        d.give_up = true;
        d.reason = "no admissible gamma: rho-inflated diameter reaches epsilon";
        return d;
    }
    d.h = (d.gamma / 2.0) / vbar;

    if (failure) {
        if (retries_ > cfg_.max_retries) {
            d.give_up = true;
            d.reason = "retry budget exhausted at step " + std::to_string(k) + " after " +
                       to_string(failure->kind);
            return d;
        }
        adjust(d, *failure);
        if (!(d.gamma > 0.0) || !(d.h > 0.0)) {
            d.give_up = true;
            d.reason = "retry parameters underflowed";
        }
    }
    return d;
}

void DefaultPolicy::adjust(PolicyDecision& d, const EngineError& failure) const {
    // h shrinks every retry. gamma shrinks every second retry, and not at
    // all for StepTooLarge: shrinking both at the same rate leaves the
    // size-ratio transversality condition unchanged and could never clear
    // it.
    d.h *= std::pow(cfg_.shrink, retries_);
    if (failure.kind != EngineError::Kind::StepTooLarge)
        d.gamma *= std::pow(cfg_.shrink, retries_ / 2);
}

void DeltaShrinkPolicy::adjust(PolicyDecision& d, const EngineError& failure) const {
    DefaultPolicy::adjust(d, failure);
    const int spare = retries_ - cfg_.max_retries / 2;
    if (spare > 0) d.delta = cfg_.delta * std::pow(cfg_.shrink, spare);
}

}  // namespace reach
