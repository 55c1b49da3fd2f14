// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
#include "reach.h"

#include <cstring>
#include <exception>
#include <filesystem>
#include <string>

#include "reach/engine.hpp"
#include "reach/io.hpp"
#include "reach/model.hpp"
#include "reach/oracle.hpp"
#include "reach/policy.hpp"

using namespace reach;

struct reach_model {
    io::LoadedModel loaded;
};

struct reach_problem {
    io::LoadedProblem loaded;
};

struct reach_result {
    ReachResult result;
    LhaModel model;  // owned copy so results outlive their problem
};

struct reach_trace {
    oracle::Trace trace;
    LhaModel model;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

reach_status fail(reach_status s, const std::string& msg) {
    set_error(msg);
    return s;
}

template <typename Fn>
reach_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const io::ParseError& e) {
        return fail(REACH_ERR_PARSE, e.what());
    } catch (const oracle::SimulationError& e) {
        return fail(REACH_ERR_SIMULATION, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(REACH_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(REACH_ERR_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* reach_status_name(reach_status status) {
    switch (status) {
        case REACH_OK: return "ok";
        case REACH_ERR_INVALID_ARGUMENT: return "invalid argument";
        case REACH_ERR_IO: return "io error";
        case REACH_ERR_PARSE: return "parse error";
        case REACH_ERR_INVALID_MODEL: return "invalid model";
        case REACH_ERR_POLICY_EXHAUSTED: return "policy exhausted";
        case REACH_ERR_MAX_STEPS: return "max steps exceeded";
        case REACH_ERR_SIMULATION: return "simulation error";
        case REACH_ERR_INTERNAL: return "internal error";
    }
    return "?";
}

const char* reach_last_error(void) { return g_last_error.c_str(); }

reach_status reach_model_load(const char* path, reach_model** out) {
    if (!path || !out) return fail(REACH_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        if (!std::filesystem::exists(path))
            return fail(REACH_ERR_IO, "no such file: " + std::string(path));
        *out = new reach_model{io::load_model(path)};
        set_error("");
        return REACH_OK;
    });
}

reach_status reach_model_validate(const reach_model* model, char** report_json) {
    if (!model) return fail(REACH_ERR_INVALID_ARGUMENT, "null model");
    return guarded([&] {
        const ValidationReport rep = validate(model->loaded.model);
        if (report_json) *report_json = dup_string(io::validation_report_json(rep));
        if (rep.valid()) {
            set_error("");
            return REACH_OK;
        }
        std::string msg = "model has " + std::to_string(rep.violations.size()) + " violation(s)";
        return fail(REACH_ERR_INVALID_MODEL, msg);
    });
}

void reach_model_free(reach_model* model) { delete model; }

reach_status reach_problem_load(const char* path, reach_problem** out) {
    if (!path || !out) return fail(REACH_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        if (!std::filesystem::exists(path))
            return fail(REACH_ERR_IO, "no such file: " + std::string(path));
        *out = new reach_problem{io::load_problem(path)};
        set_error("");
        return REACH_OK;
    });
}

void reach_problem_free(reach_problem* problem) { delete problem; }

reach_status reach_run(const reach_problem* problem, uint64_t max_steps_override,
                       reach_result** out) {
    if (!problem || !out) return fail(REACH_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        const io::LoadedProblem& lp = problem->loaded;
        EngineConfig cfg = lp.engine;
        if (max_steps_override > 0) cfg.max_steps = max_steps_override;
        DefaultPolicy policy(lp.policy, lp.problem.epsilon);
        ReachResult res = run(lp.model, lp.init, lp.problem, policy, lp.budget, cfg);
        const Termination term = res.termination;
        const std::string detail = res.termination_detail;
        *out = new reach_result{std::move(res), lp.model};
        switch (term) {
            case Termination::TimeBound:
            case Termination::JumpBound:
                set_error("");
                return REACH_OK;
            case Termination::PolicyExhausted:
                return fail(REACH_ERR_POLICY_EXHAUSTED, detail);
            case Termination::MaxStepsExceeded:
                return fail(REACH_ERR_MAX_STEPS, detail);
        }
        return REACH_OK;
    });
}

reach_status reach_result_write(const reach_result* result, const char* out_dir) {
    if (!result || !out_dir) return fail(REACH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        io::write_run_artifacts(out_dir, result->result, result->model);
        set_error("");
        return REACH_OK;
    });
}

uint64_t reach_result_steps(const reach_result* result) { return result->result.step_count; }
uint64_t reach_result_jumps(const reach_result* result) { return result->result.jumps; }
double reach_result_tf(const reach_result* result) { return result->result.t_f; }
double reach_result_final_rho(const reach_result* result) { return result->result.final_rho; }
const char* reach_result_termination(const reach_result* result) {
    return to_string(result->result.termination);
}

void reach_result_free(reach_result* result) { delete result; }

reach_status reach_simulate(const reach_problem* problem, double step, reach_trace** out) {
    if (!problem || !out) return fail(REACH_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        const io::LoadedProblem& lp = problem->loaded;
        oracle::Trace tr = oracle::simulate(lp.model, lp.init, lp.problem.T, lp.problem.N, step);
        *out = new reach_trace{std::move(tr), lp.model};
        set_error("");
        return REACH_OK;
    });
}

reach_status reach_trace_write(const reach_trace* trace, const char* out_dir) {
    if (!trace || !out_dir) return fail(REACH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        io::write_trace_artifacts(out_dir, trace->trace, trace->model);
        set_error("");
        return REACH_OK;
    });
}

uint64_t reach_trace_samples(const reach_trace* trace) { return trace->trace.samples.size(); }
uint64_t reach_trace_events(const reach_trace* trace) { return trace->trace.events.size(); }

void reach_trace_free(reach_trace* trace) { delete trace; }

void reach_string_free(char* s) { delete[] s; }

}  // extern "C"
