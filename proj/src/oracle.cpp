// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
#include "reach/oracle.hpp"

#include <cmath>
#include <limits>

namespace reach {
namespace oracle {

namespace {

constexpr double kBisectTol = 1e-12;  // event time tolerance
constexpr double kZenoGap = 1e-9;

Vec field(const Location& l, const Vec& x) {
    Vec f = l.A * x;
    f += l.u;
    return f;
}

Vec rk4(const Location& l, const Vec& x, double h) {
    const Vec k1 = field(l, x);
    const Vec k2 = field(l, x + (h / 2.0) * k1);
    const Vec k3 = field(l, x + (h / 2.0) * k2);
    const Vec k4 = field(l, x + h * k3);
    Vec out = x;
    out += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    return out;
}

bool in_invariant(const LhaModel& model, std::size_t loc, const Vec& x) {
    for (std::size_t ci : model.locations()[loc].cells)
        if (model.cells()[ci].poly.contains(x, SetMode::Closed)) return true;
    return false;
}

}  // namespace

Trace simulate(const LhaModel& model, const InitialCondition& init, double T, std::uint64_t N,
               double step) {
    if (!(step > 0.0)) throw std::invalid_argument("simulate: step must be > 0");
    if (!(T >= 0.0)) throw std::invalid_argument("simulate: T must be >= 0");
    if (init.location >= model.locations().size())
        throw std::invalid_argument("simulate: initial location out of range");
    if (!in_invariant(model, init.location, init.x0))
        throw std::invalid_argument("simulate: initial state outside the initial invariant");

    Trace tr;
    double t = 0.0;
    Vec x = init.x0;
    std::size_t loc = init.location;
    tr.samples.push_back(Sample{t, x, loc});

    while (t < T) {
        const double h = std::min(step, T - t);
        // Advance one grid step, switching locations at invariant exits.
        double done = 0.0;
        bool stopped_at_event = false;
        while (done < h) {
            const double rem = h - done;
            const Vec xn = rk4(model.locations()[loc], x, rem);
            if (in_invariant(model, loc, xn)) {
                x = xn;
                done = h;
                break;
            }
            // Exit inside (done, done + rem): bisect the first leave time.
            double lo = 0.0, hi = rem;
            while (hi - lo > kBisectTol) {
                const double mid = (lo + hi) / 2.0;
                if (in_invariant(model, loc, rk4(model.locations()[loc], x, mid)))
                    lo = mid;
                else
                    hi = mid;
            }
            const Vec x_cross = rk4(model.locations()[loc], x, (lo + hi) / 2.0);
            const Vec x_out = rk4(model.locations()[loc], x, hi);

            if (!model.state_box().contains(x_out))
                throw SimulationError("execution left the state box at t = " +
                                      std::to_string(t + done + hi));
            std::vector<std::size_t> cands;
            for (std::size_t li = 0; li < model.locations().size(); ++li)
                if (li != loc && in_invariant(model, li, x_out)) cands.push_back(li);
            if (cands.size() != 1) {
                std::string msg = "nondeterministic crossing at t = " +
                                  std::to_string(t + done + hi) + ": " +
                                  std::to_string(cands.size()) + " successor invariants";
                throw SimulationError(msg);
            }

            Event ev;
            ev.t = t + done + (lo + hi) / 2.0;
            ev.from = loc;
            ev.to = cands.front();
            ev.x = x_cross;
            if (!tr.events.empty() && ev.t - tr.events.back().t < kZenoGap)
                tr.zeno_suspected = true;
            tr.events.push_back(ev);

            loc = cands.front();
            x = x_out;
            done += hi;

            if (tr.events.size() >= N) {
                // Horizon ends at the N-th transition.
                t = t + done;
                tr.samples.push_back(Sample{t, x, loc});
                stopped_at_event = true;
                break;
            }
        }
        if (stopped_at_event) break;
        t += h;
        tr.samples.push_back(Sample{t, x, loc});
    }
    return tr;
}

double crossing_time(const LhaModel& model, const InitialCondition& init, const Halfspace& facet,
                     double T, double step) {
    const Trace tr = simulate(model, init, T, std::numeric_limits<std::uint64_t>::max(), step);
    for (std::size_t i = 0; i + 1 < tr.samples.size(); ++i) {
        const double ga = facet.eval(tr.samples[i].x);
        const double gb = facet.eval(tr.samples[i + 1].x);
        if (!((ga < 0.0 && gb >= 0.0) || (ga > 0.0 && gb <= 0.0))) continue;
        const Sample& s = tr.samples[i];
        double lo = 0.0, hi = tr.samples[i + 1].t - s.t;
        while (hi - lo > kBisectTol) {
            const double mid = (lo + hi) / 2.0;
            const double g = facet.eval(rk4(model.locations()[s.location], s.x, mid));
            if ((ga < 0.0) == (g < 0.0))
                lo = mid;
            else
                hi = mid;
        }
        return s.t + (lo + hi) / 2.0;
    }
    throw SimulationError("no facet crossing before T");
}

}  // namespace oracle
}  // namespace reach
