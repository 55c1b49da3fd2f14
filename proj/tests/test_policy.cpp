#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "reach/policy.hpp"
#include "support/test_models.hpp"

using namespace reach;
using namespace reach::testing;

namespace {

// A previous step whose region has the given diameter; zero accumulated
// error so the paper's gamma formula applies verbatim on drift dynamics.
ReachStep step_with_diameter(double dia) {
    ReachStep s;
    s.k = 3;
    s.t = 0.5;
    s.location = 0;
    s.d_hat = linf_ball(Vec{1, 0}, dia / 2.0);
    s.d_hat_gamma = s.d_hat;
    s.rho = 0.0;
    s.params = StepParams{1e-5, 0.1, 0.01};
    return s;
}

}  // namespace

TEST_CASE("the default policy reproduces the published formulas") {
    // Drift dynamics: A = 0, so the one-step growth allowance is exactly 1
    // and vbar = 1; with a zero budget the estimate is just the diameter.
    const LhaModel m = make_drift();
    const NumericsBudget zero{0, 0, 0, 0};
    DefaultPolicy policy(PolicyConfig{}, 0.5);

    const PolicyDecision d = policy.propose(4, step_with_diameter(0.1), nullptr, m, zero);
    CHECK(!d.give_up);
    CHECK(d.delta == 1e-5);
    CHECK(d.gamma == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(d.h == doctest::Approx(0.1).epsilon(1e-15));  // (gamma/2)/vbar, vbar = 1
}

TEST_CASE("no admissible gamma means give_up") {
    const LhaModel m = make_drift();
    const NumericsBudget zero{0, 0, 0, 0};
    DefaultPolicy policy(PolicyConfig{}, 0.5);
    const PolicyDecision d = policy.propose(4, step_with_diameter(0.6), nullptr, m, zero);
    CHECK(d.give_up);
    CHECK(!d.reason.empty());
}

TEST_CASE("StepTooLarge retries keep gamma and halve h") {
    const LhaModel m = make_drift();
    const NumericsBudget zero{0, 0, 0, 0};
    DefaultPolicy policy(PolicyConfig{}, 0.5);
    const ReachStep last = step_with_diameter(0.1);

    const PolicyDecision base = policy.propose(4, last, nullptr, m, zero);
    const EngineError err{EngineError::Kind::StepTooLarge, 4, ""};
    const PolicyDecision r1 = policy.propose(4, last, &err, m, zero);
    CHECK(r1.gamma == base.gamma);
    CHECK(r1.h == doctest::Approx(base.h / 2.0).epsilon(1e-15));
    const PolicyDecision r2 = policy.propose(4, last, &err, m, zero);
    CHECK(r2.gamma == base.gamma);
    CHECK(r2.h == doctest::Approx(base.h / 4.0).epsilon(1e-15));
}

TEST_CASE("other failures shrink h every retry and gamma every second retry") {
    const LhaModel m = make_drift();
    const NumericsBudget zero{0, 0, 0, 0};
    DefaultPolicy policy(PolicyConfig{}, 0.5);
    const ReachStep last = step_with_diameter(0.1);

    const PolicyDecision base = policy.propose(4, last, nullptr, m, zero);
    const EngineError err{EngineError::Kind::DiameterExceeded, 4, ""};
    const PolicyDecision r1 = policy.propose(4, last, &err, m, zero);
    CHECK(r1.h == doctest::Approx(base.h / 2.0).epsilon(1e-15));
    CHECK(r1.gamma == base.gamma);
    const PolicyDecision r2 = policy.propose(4, last, &err, m, zero);
    CHECK(r2.h == doctest::Approx(base.h / 4.0).epsilon(1e-15));
    CHECK(r2.gamma == doctest::Approx(base.gamma / 2.0).epsilon(1e-15));
}

TEST_CASE("the retry budget bounds the number of retries") {
    const LhaModel m = make_drift();
    const NumericsBudget zero{0, 0, 0, 0};
    PolicyConfig cfg;
    cfg.max_retries = 3;
    DefaultPolicy policy(cfg, 0.5);
    const ReachStep last = step_with_diameter(0.1);
    const EngineError err{EngineError::Kind::InvariantStraddle, 4, ""};

    int proposals = 0;
    for (; proposals < 10; ++proposals) {
        const PolicyDecision d = policy.propose(4, last, &err, m, zero);
        if (d.give_up) break;
    }
    CHECK(proposals == cfg.max_retries);
}

TEST_CASE("a success resets the retry counter") {
    const LhaModel m = make_drift();
    const NumericsBudget zero{0, 0, 0, 0};
    PolicyConfig cfg;
    cfg.max_retries = 2;
    DefaultPolicy policy(cfg, 0.5);
    const ReachStep last = step_with_diameter(0.1);
    const EngineError err{EngineError::Kind::InvariantStraddle, 4, ""};

    CHECK(!policy.propose(4, last, &err, m, zero).give_up);
    CHECK(!policy.propose(4, last, &err, m, zero).give_up);
    CHECK(!policy.propose(5, last, nullptr, m, zero).give_up);  // success at 4, move on
    CHECK(policy.retries_at(5) == 0);
    CHECK(!policy.propose(5, last, &err, m, zero).give_up);  // fresh budget at 5
}

TEST_CASE("the step index must not decrease") {
    const LhaModel m = make_drift();
    const NumericsBudget zero{0, 0, 0, 0};
    DefaultPolicy policy(PolicyConfig{}, 0.5);
    const ReachStep last = step_with_diameter(0.1);
    CHECK(!policy.propose(6, last, nullptr, m, zero).give_up);
    CHECK_THROWS_AS(policy.propose(5, last, nullptr, m, zero), std::logic_error);
}

TEST_CASE("proposals always satisfy h < gamma / vbar") {
    const LhaModel quad = make_quadrants();
    const NumericsBudget b{1e-15, 1e-15, 1e-15, 1e-15};
    DefaultPolicy policy(PolicyConfig{}, 0.5);
    ReachStep last;
    last.d_hat = linf_ball(Vec{2.5, 6}, 1e-5);
    last.rho = 0.0;
    const double vb = v_bar(quad);

    const EngineError err{EngineError::Kind::DiameterExceeded, 1, ""};
    PolicyDecision d = policy.propose(1, last, nullptr, quad, b);
    for (int r = 0; r < 10 && !d.give_up; ++r) {
        CHECK(d.h < d.gamma / vb);
        d = policy.propose(1, last, &err, quad, b);
    }
}

TEST_CASE("the delta-shrinking variant reduces delta late in the retry ladder") {
    const LhaModel m = make_drift();
    const NumericsBudget zero{0, 0, 0, 0};
    PolicyConfig cfg;
    cfg.max_retries = 10;
    DeltaShrinkPolicy policy(cfg, 0.5);
    const ReachStep last = step_with_diameter(0.1);
    const EngineError err{EngineError::Kind::InvariantStraddle, 4, ""};

    PolicyDecision d = policy.propose(4, last, &err, m, zero);
    for (int r = 1; r < 7; ++r) d = policy.propose(4, last, &err, m, zero);
    CHECK(d.delta < cfg.delta);
}

TEST_CASE("policy configuration is validated") {
    CHECK_THROWS_AS(DefaultPolicy(PolicyConfig{-1.0, 20, 0.5}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(DefaultPolicy(PolicyConfig{1e-5, 20, 1.5}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(DefaultPolicy(PolicyConfig{}, -0.5), std::invalid_argument);
}
