// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
#include "reach/engine.hpp"

#include <algorithm>
#include <cmath>

#include "reach/log.hpp"
#include "reach/policy.hpp"

namespace reach {

const char* to_string(EngineError::Kind kind) {
    switch (kind) {
        case EngineError::Kind::StepTooLarge: return "StepTooLarge";
        case EngineError::Kind::DiameterExceeded: return "DiameterExceeded";
        case EngineError::Kind::InvariantStraddle: return "InvariantStraddle";
        case EngineError::Kind::NondeterministicTransition: return "NondeterministicTransition";
        case EngineError::Kind::NontransversalTransition: return "NontransversalTransition";
    }
    return "?";
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::TimeBound: return "time bound";
        case Termination::JumpBound: return "jump bound";
        case Termination::PolicyExhausted: return "policy exhausted";
        case Termination::MaxStepsExceeded: return "max steps exceeded";
    }
    return "?";
}

namespace {

Polytope propagate_polytope(const Polytope& p, const FlowMap& flow) {
    std::vector<Vec> imgs;
    imgs.reserve(p.vertices().size());
    for (const auto& v : p.vertices()) imgs.push_back(flow.apply(v));
    return convex_hull(imgs);
}

std::string fmt(double v) { return std::to_string(v); }

struct CrossingSet {
    Polytope j;
    FacetSegment facet;
};

// Inflated region clipped to the shared boundary of the two invariants:
// j = region ∩ Inv_from ∩ Inv_to, a (degenerate) polytope on the facet line.
// Fails when the region meets no shared facet or facets on different lines.
std::optional<CrossingSet> crossing_set(const Polytope& inflated, std::size_t from, std::size_t to,
                                        const LhaModel& model, std::string* err) {
    std::vector<CrossingSet> found;
    for (const auto& seg : shared_facets(model, from, to)) {
        Polytope j = intersect_hyperplane(inflated, seg.plane);
        if (j.is_empty()) continue;
        j = intersect(j, model.cells()[seg.cell_from].poly);
        j = intersect(j, model.cells()[seg.cell_to].poly);
        if (!j.is_empty()) found.push_back(CrossingSet{std::move(j), seg});
    }
    if (found.empty()) {
        if (err) *err = "crossing region misses the shared facet";
        return std::nullopt;
    }
    // Collinear pieces (cell joints along the same facet line) merge into one
    // segment; distinct lines leave the crossing ambiguous.
    std::vector<Vec> pts = found.front().j.vertices();
    for (std::size_t i = 1; i < found.size(); ++i) {
        const Halfspace& a = found.front().facet.plane;
        const Halfspace& b = found[i].facet.plane;
        const bool same = (std::abs(std::abs(a.normal[0] * b.normal[0] + a.normal[1] * b.normal[1]) -
                                    1.0) <= 1e-9) &&
                          (std::abs(std::abs(a.offset) - std::abs(b.offset)) <= 1e-9);
        if (!same) {
            if (err) *err = "crossing region meets shared facets on different lines";
            return std::nullopt;
        }
        for (const auto& v : found[i].j.vertices()) pts.push_back(v);
    }
    return CrossingSet{Polytope::hull_of(pts), found.front().facet};
}

const FacetSegment* nearest_facet(const std::vector<FacetSegment>& segs, const Polytope& j) {
    const FacetSegment* best = nullptr;
    double best_d = 0.0;
    for (const auto& s : segs) {
        double d = 0.0;
        for (const auto& v : j.vertices()) d = std::max(d, std::abs(s.plane.eval(v)));
        if (!best || d < best_d) {
            best = &s;
            best_d = d;
        }
    }
    return best;
}

}  // namespace

bool detect_transition(const Polytope& prev_d_rho, const Polytope& cur_d_rho, std::size_t loc,
                       const LhaModel& model) {
    return classify_against_invariant(model, loc, prev_d_rho) == InvariantRelation::Inside &&
           classify_against_invariant(model, loc, cur_d_rho) == InvariantRelation::Outside;
}

DeterminismCheck check_deterministic(const Polytope& cur_d_rho, std::size_t from,
                                     const LhaModel& model) {
    DeterminismCheck out;
    std::vector<std::size_t> inside;
    for (std::size_t li = 0; li < model.locations().size(); ++li) {
        if (li == from) continue;
        if (classify_against_invariant(model, li, cur_d_rho) == InvariantRelation::Inside)
            inside.push_back(li);
    }
    if (inside.size() == 1) {
        out.to = inside.front();
        return out;
    }
    if (inside.empty()) {
        out.detail = "crossed region lies in no single invariant interior";
    } else {
        out.detail = "crossed region lies in several invariant interiors:";
        for (std::size_t li : inside) out.detail += " '" + model.locations()[li].name + "'";
    }
    return out;
}

TransversalityCheck check_transversal(const Polytope& j_hat, std::size_t from, std::size_t to,
                                      double h, double rho, const LhaModel& model,
                                      double epsilon_trans) {
    TransversalityCheck out;
    if (j_hat.is_empty()) {
        out.detail = "empty crossing set";
        return out;
    }
    const double dia = diameter(j_hat);
    const double vbar = v_bar(model);
    if (!(h < (dia / 2.0) / (2.0 * vbar))) {
        out.detail = "(i) sampling period " + fmt(h) + " not below crossing-set bound " +
                     fmt((dia / 2.0) / (2.0 * vbar));
        return out;
    }
    const Polytope grown = gamma_neighborhood(j_hat, dia / 2.0 + rho);
    if (!invariant_union_contains(model, {from, to}, grown)) {
        out.detail = "(ii) inflated crossing set leaves the union of the two invariants";
        return out;
    }
    const auto segs = shared_facets(model, from, to);
    const FacetSegment* facet = nearest_facet(segs, j_hat);
    if (!facet) {
        out.detail = "no shared facet between the two invariants";
        return out;
    }
    std::string err;
    const auto grown_on_facet = crossing_set(grown, from, to, model, &err);
    if (!grown_on_facet) {
        out.detail = "(iii) " + err;
        return out;
    }
    const Vec& n = facet->plane.normal;
    const Location& lc = model.locations()[from];
    const Location& ln = model.locations()[to];
    for (const auto& x : grown_on_facet->j.vertices()) {
        const Vec fc = lc.A * x + lc.u;
        const Vec fn = ln.A * x + ln.u;
        const double pc = fc[0] * n[0] + fc[1] * n[1];
        const double pn = fn[0] * n[0] + fn[1] * n[1];
        if (!(pc >= epsilon_trans && pn >= epsilon_trans)) {
            out.detail = "(iii) flow margin " + fmt(std::min(pc, pn)) + " below " +
                         fmt(epsilon_trans) + " at (" + fmt(x[0]) + ", " + fmt(x[1]) + ")";
            return out;
        }
    }
    out.pass = true;
    return out;
}

RefineOutcome refine_transition(const ReachStep& prev, const StepParams& params, std::size_t from,
                                std::size_t to, const LhaModel& model, double rho_k, double vbar,
                                int subdivisions) {
    RefineOutcome out;
    if (subdivisions < 1) {
        out.detail = "subdivisions must be >= 1";
        return out;
    }
    const int m = subdivisions;
    const double dt = params.h / m;
    const Location& lc = model.locations()[from];

    std::vector<Polytope> region(static_cast<std::size_t>(m) + 1);
    std::vector<double> vol_from(m + 1, 0.0), vol_to(m + 1, 0.0);
    int last_inside = -1, first_outside = -1;
    for (int i = 0; i <= m; ++i) {
        const FlowMap flow = make_flow_map(lc.A, lc.u, i * dt);
        const Polytope d_i = propagate_polytope(prev.d_hat, flow);
        // At the bracket start the accumulated error is still the previous
        // step's; the full-step mu_x applies from the first sub-instant on.
        region[i] = gamma_neighborhood(d_i, i == 0 ? prev.rho : rho_k);
        const auto rel = classify_against_invariant(model, from, region[i]);
        if (rel == InvariantRelation::Inside && first_outside < 0) last_inside = i;
        if (rel == InvariantRelation::Outside && first_outside < 0) first_outside = i;
        for (std::size_t ci : model.locations()[from].cells)
            vol_from[i] += area(intersect(region[i], model.cells()[ci].poly));
        for (std::size_t ci : model.locations()[to].cells)
            vol_to[i] += area(intersect(region[i], model.cells()[ci].poly));
    }
    if (log_level() >= 2) {
        std::string dbg = "refine scan:";
        for (int i = 0; i <= m; ++i)
            dbg += " " + std::to_string(i) + ":(" + std::to_string(vol_from[i]) + "," +
                   std::to_string(vol_to[i]) + ")";
        log_debug(dbg + " inside=" + std::to_string(last_inside) +
                  " outside=" + std::to_string(first_outside));
    }
    if (last_inside < 0 || first_outside < 0 || last_inside >= first_outside) {
        out.detail = "bracket invalid: no interior-to-exterior passage over the step";
        return out;
    }
    int flip = -1;
    for (int i = 0; i < m; ++i)
        if (vol_from[i] > vol_to[i] && vol_from[i + 1] < vol_to[i + 1]) {
            flip = i;
            break;
        }
    if (flip < 0) {
        out.detail = "no volume dominance flip found";
        return out;
    }

    const double gamma_prime = 2.0 * dt * vbar;
    const FlowMap flow = make_flow_map(lc.A, lc.u, (flip + 1) * dt);
    const Polytope at_flip = propagate_polytope(prev.d_hat, flow);
    const Polytope inflated = gamma_neighborhood(at_flip, gamma_prime + rho_k);
    std::string err;
    const auto cs = crossing_set(inflated, from, to, model, &err);
    if (!cs) {
        out.detail = "refined crossing set: " + err;
        return out;
    }
    out.ok = true;
    out.record.from = from;
    out.record.to = to;
    out.record.bracket_lo = prev.t + last_inside * dt;
    out.record.bracket_hi = prev.t + first_outside * dt;
    out.record.crossing_set = cs->j;
    out.anchor = prev.t + (flip + 1) * dt;
    return out;
}

PostOutcome post(const ReachStep& prev, const StepParams& params, const LhaModel& model,
                 const NumericsBudget& budget, const Problem& problem, const EngineConfig& cfg,
                 double mu_x, double vbar) {
    if (!(params.delta > 0.0 && params.gamma > 0.0 && params.h > 0.0))
        throw std::invalid_argument("post: step parameters must be positive");

    PostOutcome out;
    const std::uint64_t k = prev.k + 1;
    auto fail = [&](EngineError::Kind kind, std::string detail) {
        out.error = EngineError{kind, k, std::move(detail)};
        return out;
    };

    const Location& loc = model.locations().at(prev.location);
    const FlowMap flow = make_flow_map(loc.A, loc.u, params.h);
    Polytope d_hat = propagate_polytope(prev.d_hat, flow);
    Polytope d_gamma = gamma_neighborhood(d_hat, params.gamma);
    double rho = prev.rho + mu_x;

    if (params.h >= (params.gamma - rho) / vbar)
        return fail(EngineError::Kind::StepTooLarge,
                    "h = " + fmt(params.h) + " >= (gamma - rho)/vbar = " +
                        fmt((params.gamma - rho) / vbar));
    if (diameter(d_gamma) >= problem.epsilon)
        return fail(EngineError::Kind::DiameterExceeded,
                    "dia = " + fmt(diameter(d_gamma)) + " >= epsilon = " + fmt(problem.epsilon));

    const Polytope d_rho = gamma_neighborhood(d_hat, rho);
    const auto rel = classify_against_invariant(model, prev.location, d_rho);

    std::size_t location = prev.location;
    std::uint64_t jumps = prev.jump_count;
    double t_k = prev.t + params.h;
    double t_slop = prev.t_slop;

    if (rel == InvariantRelation::Straddle)
        return fail(EngineError::Kind::InvariantStraddle,
                    "region straddles the boundary of '" + loc.name + "'");

    if (rel == InvariantRelation::Outside) {
        const Polytope prev_rho = gamma_neighborhood(prev.d_hat, prev.rho);
        if (classify_against_invariant(model, prev.location, prev_rho) != InvariantRelation::Inside)
            return fail(EngineError::Kind::InvariantStraddle,
                        "exited '" + loc.name + "' without a certified interior start");

        const auto det = check_deterministic(d_rho, prev.location, model);
        if (!det.to) return fail(EngineError::Kind::NondeterministicTransition, det.detail);
        const std::size_t to = *det.to;

        std::string err;
        const auto cs = crossing_set(gamma_neighborhood(d_hat, params.gamma + rho), prev.location,
                                     to, model, &err);
        if (!cs) return fail(EngineError::Kind::NontransversalTransition, err);
        const auto tv =
            check_transversal(cs->j, prev.location, to, params.h, rho, model, cfg.epsilon_trans);
        if (!tv.pass) return fail(EngineError::Kind::NontransversalTransition, tv.detail);

        auto refined = refine_transition(prev, params, prev.location, to, model, rho, vbar,
                                         cfg.refine_subdivisions);
        if (!refined.ok)
            return fail(EngineError::Kind::InvariantStraddle, "refinement: " + refined.detail);

        // Seed the new location with the refined crossing set propagated one
        // step under its dynamics; the clock re-anchors to the refined
        // crossing instant so stored times stay aligned with the flow.
        t_k = refined.anchor + params.h;
        const Location& nl = model.locations()[to];
        const FlowMap nf = make_flow_map(nl.A, nl.u, params.h);
        d_hat = propagate_polytope(refined.record.crossing_set, nf);
        d_gamma = gamma_neighborhood(d_hat, params.gamma);
        if (diameter(d_gamma) >= problem.epsilon)
            return fail(EngineError::Kind::DiameterExceeded,
                        "post-jump dia = " + fmt(diameter(d_gamma)) + " >= epsilon");
        rho += mu_x + budget.mu_c + budget.mu_h;
        if (classify_against_invariant(model, to, gamma_neighborhood(d_hat, rho)) !=
            InvariantRelation::Inside)
            return fail(EngineError::Kind::InvariantStraddle,
                        "post-jump region not interior to '" + nl.name + "'");

        location = to;
        ++jumps;
        refined.record.jump_index = jumps;
        refined.record.step = k;
        // Certify the bracket on the true clock: stored times are only
        // accurate to the accumulated slop, and this jump's own raw bracket
        // width adds to it.
        const double raw_width = refined.record.bracket_hi - refined.record.bracket_lo;
        refined.record.bracket_lo -= prev.t_slop;
        refined.record.bracket_hi += prev.t_slop;
        t_slop = prev.t_slop + raw_width;
        out.transition = std::move(refined.record);
    }

    out.step = ReachStep{k,     t_k,   location, std::move(d_hat), std::move(d_gamma),
                         rho,   jumps, params,   t_slop};
    return out;
}

ReachResult run(const LhaModel& model, const InitialCondition& init, const Problem& problem,
                Policy& policy, const NumericsBudget& budget, const EngineConfig& cfg) {
    budget.check();
    if (!(problem.T >= 0.0)) throw std::invalid_argument("run: T must be >= 0");
    if (!(problem.epsilon > 0.0)) throw std::invalid_argument("run: epsilon must be > 0");
    if (init.location >= model.locations().size())
        throw std::invalid_argument("run: initial location out of range");
    {
        bool inside = false;
        for (std::size_t ci : model.locations()[init.location].cells)
            inside = inside || model.cells()[ci].poly.contains(init.x0, SetMode::Closed);
        if (!inside)
            throw std::invalid_argument("run: initial state outside the initial invariant");
    }

    const double mu_x = compute_mu_x(budget, model);
    const double vbar = v_bar(model);

    ReachResult res;
    auto seed = [&](double delta) {
        ReachStep s;
        s.k = 0;
        s.t = 0.0;
        s.location = init.location;
        s.d_hat = linf_ball(init.x0, delta);
        s.d_hat_gamma = s.d_hat;
        s.rho = 0.0;
        s.jump_count = 0;
        s.params = StepParams{delta, 0.0, 0.0};
        return s;
    };
    res.steps.push_back(seed(policy.initial_delta()));

    auto finish = [&](Termination t, std::string detail) {
        res.termination = t;
        res.termination_detail = std::move(detail);
        res.t_f = res.steps.back().t;
        res.jumps = res.steps.back().jump_count;
        res.final_rho = res.steps.back().rho;
        res.step_count = res.steps.back().k;
        log_info("run finished: " + std::string(to_string(t)) + ", steps " +
                 std::to_string(res.step_count) + ", jumps " + std::to_string(res.jumps));
        return res;
    };

    std::optional<EngineError> failure;
    int retry = 0;
    std::uint64_t k = 1;
    while (true) {
        if (res.steps.back().t >= problem.T) return finish(Termination::TimeBound, "");
        if (res.steps.back().jump_count >= problem.N) return finish(Termination::JumpBound, "");
        if (k > cfg.max_steps)
            return finish(Termination::MaxStepsExceeded,
                          "step cap " + std::to_string(cfg.max_steps));

        const PolicyDecision d =
            policy.propose(k, res.steps.back(), failure ? &*failure : nullptr, model, budget);
        if (d.give_up)
            return finish(Termination::PolicyExhausted,
                          d.reason + (failure ? "; last failure: " +
                                                    std::string(to_string(failure->kind)) + " (" +
                                                    failure->detail + ")"
                                              : ""));
        if (d.resume_step != k)
            throw std::logic_error("run: policy must resume at the failed step");

        if (d.delta != res.steps.back().params.delta) {
            // A new initial ball invalidates every stored region: rebuild the
            // log from scratch with the recorded per-step parameters.
            std::vector<ReachStep> rebuilt;
            rebuilt.push_back(seed(d.delta));
            std::vector<TransitionRecord> trans;
            std::optional<EngineError> replay_err;
            for (std::size_t i = 1; i < res.steps.size(); ++i) {
                StepParams p = res.steps[i].params;
                p.delta = d.delta;
                PostOutcome o = post(rebuilt.back(), p, model, budget, problem, cfg, mu_x, vbar);
                if (o.error) {
                    replay_err = o.error;
                    break;
                }
                if (o.step->location != res.steps[i].location) {
                    replay_err = EngineError{EngineError::Kind::InvariantStraddle, o.step->k,
                                             "replay diverged from the recorded location path"};
                    break;
                }
                if (o.transition) trans.push_back(std::move(*o.transition));
                rebuilt.push_back(std::move(*o.step));
            }
            if (replay_err) {
                failure = replay_err;
                res.failures.push_back(
                    FailureEvent{replay_err->step, replay_err->kind, ++retry, replay_err->detail});
                continue;
            }
            res.steps = std::move(rebuilt);
            res.transitions = std::move(trans);
            log_debug("replayed log with delta = " + std::to_string(d.delta));
        }

        PostOutcome o = post(res.steps.back(), StepParams{d.delta, d.gamma, d.h}, model, budget,
                             problem, cfg, mu_x, vbar);
        if (o.error) {
            failure = o.error;
            ++retry;
            res.failures.push_back(FailureEvent{o.error->step, o.error->kind, retry, o.error->detail});
            log_debug("step " + std::to_string(k) + " retry " + std::to_string(retry) + ": " +
                      to_string(o.error->kind) + " — " + o.error->detail);
            continue;
        }
        failure.reset();
        retry = 0;
        if (o.transition) {
            log_info("jump " + std::to_string(o.transition->jump_index) + ": '" +
                     model.locations()[o.transition->from].name + "' -> '" +
                     model.locations()[o.transition->to].name + "' in (" +
                     std::to_string(o.transition->bracket_lo) + ", " +
                     std::to_string(o.transition->bracket_hi) + ")");
            res.transitions.push_back(std::move(*o.transition));
        }
        res.steps.push_back(std::move(*o.step));
        ++k;
    }
}

}  // namespace reach
