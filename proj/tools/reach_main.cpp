// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the core exclusively through the C API in
// reach.h.
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "reach.h"

namespace {

// Exit codes: 0 ok, 1 invalid model, 2 parse/input error, 3 policy
// exhausted, 4 step cap, 5 simulation error.
int exit_code_for(reach_status s) {
    switch (s) {
        case REACH_OK: return 0;
        case REACH_ERR_INVALID_MODEL: return 1;
        case REACH_ERR_POLICY_EXHAUSTED: return 3;
        case REACH_ERR_MAX_STEPS: return 4;
        case REACH_ERR_SIMULATION: return 5;
        default: return 2;
    }
}

int report_failure(const char* what, reach_status s) {
    std::fprintf(stderr, "reach: %s: %s (%s)\n", what, reach_last_error(), reach_status_name(s));
    return exit_code_for(s);
}

int cmd_validate(const std::string& model_path) {
    reach_model* model = nullptr;
    reach_status s = reach_model_load(model_path.c_str(), &model);
    if (s != REACH_OK) return report_failure("validate", s);
    std::unique_ptr<reach_model, decltype(&reach_model_free)> guard(model, reach_model_free);

    char* report = nullptr;
    s = reach_model_validate(model, &report);
    std::unique_ptr<char, decltype(&reach_string_free)> rguard(report, reach_string_free);
    if (s == REACH_OK) {
        std::printf("%s: valid\n", model_path.c_str());
        return 0;
    }
    if (s != REACH_ERR_INVALID_MODEL) return report_failure("validate", s);
    std::printf("%s: INVALID\n", model_path.c_str());
    try {
        const auto arr = nlohmann::json::parse(report ? report : "[]");
        for (const auto& v : arr)
            std::printf("  [%s] %s\n", v.value("code", "?").c_str(),
                        v.value("message", "").c_str());
    } catch (...) {
        std::printf("  (unreadable validation report)\n");
    }
    return 1;
}

int cmd_run(const std::string& problem_path, const std::string& out_dir, std::uint64_t max_steps) {
    reach_problem* problem = nullptr;
    reach_status s = reach_problem_load(problem_path.c_str(), &problem);
    if (s != REACH_OK) return report_failure("run", s);
    std::unique_ptr<reach_problem, decltype(&reach_problem_free)> pguard(problem,
                                                                         reach_problem_free);

    reach_result* result = nullptr;
    s = reach_run(problem, max_steps, &result);
    if (!result) return report_failure("run", s);
    std::unique_ptr<reach_result, decltype(&reach_result_free)> rguard(result, reach_result_free);

    const reach_status ws = reach_result_write(result, out_dir.c_str());
    if (ws != REACH_OK) return report_failure("run: writing artifacts", ws);

    std::printf("termination: %s\n", reach_result_termination(result));
    std::printf("t_f:         %.17g\n", reach_result_tf(result));
    std::printf("steps:       %llu\n",
                static_cast<unsigned long long>(reach_result_steps(result)));
    std::printf("jumps:       %llu\n",
                static_cast<unsigned long long>(reach_result_jumps(result)));
    std::printf("final rho:   %.5e\n", reach_result_final_rho(result));
    std::printf("artifacts:   %s\n", out_dir.c_str());
    if (s != REACH_OK) {
        std::fprintf(stderr, "reach: run did not complete: %s (%s)\n", reach_last_error(),
                     reach_status_name(s));
        return exit_code_for(s);
    }
    return 0;
}

int cmd_simulate(const std::string& problem_path, double step, const std::string& out_dir) {
    reach_problem* problem = nullptr;
    reach_status s = reach_problem_load(problem_path.c_str(), &problem);
    if (s != REACH_OK) return report_failure("simulate", s);
    std::unique_ptr<reach_problem, decltype(&reach_problem_free)> pguard(problem,
                                                                         reach_problem_free);

    reach_trace* trace = nullptr;
    s = reach_simulate(problem, step, &trace);
    if (s != REACH_OK) return report_failure("simulate", s);
    std::unique_ptr<reach_trace, decltype(&reach_trace_free)> tguard(trace, reach_trace_free);

    const reach_status ws = reach_trace_write(trace, out_dir.c_str());
    if (ws != REACH_OK) return report_failure("simulate: writing artifacts", ws);

    std::printf("samples: %llu\n", static_cast<unsigned long long>(reach_trace_samples(trace)));
    std::printf("events:  %llu\n", static_cast<unsigned long long>(reach_trace_events(trace)));
    std::printf("artifacts: %s\n", out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded reach sets for planar linear hybrid automata"};
    app.require_subcommand(1);

    std::string model_path;
    auto* validate = app.add_subcommand("validate", "check a model file");
    validate->add_option("model", model_path, "model JSON file")->required();

    std::string problem_path, out_dir = "out";
    std::uint64_t max_steps = 0;
    auto* run = app.add_subcommand("run", "compute a bounded reach set");
    run->add_option("problem", problem_path, "problem JSON file")->required();
    run->add_option("--out", out_dir, "output directory (default: out)");
    run->add_option("--max-steps", max_steps, "override the step cap");

    std::string sim_problem, sim_out = "out";
    double sim_step = 1e-4;
    auto* simulate = app.add_subcommand("simulate", "high-resolution reference execution");
    simulate->add_option("problem", sim_problem, "problem JSON file")->required();
    simulate->add_option("--step", sim_step, "integration step (default 1e-4)");
    simulate->add_option("--out", sim_out, "output directory (default: out)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (validate->parsed()) return cmd_validate(model_path);
    if (run->parsed()) return cmd_run(problem_path, out_dir, max_steps);
    if (simulate->parsed()) {
        if (!(sim_step > 0.0)) {
            std::fprintf(stderr, "reach: simulate: --step must be > 0\n");
            return 2;
        }
        return cmd_simulate(sim_problem, sim_step, sim_out);
    }
    return 2;
}
