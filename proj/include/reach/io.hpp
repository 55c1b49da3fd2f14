// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "reach/engine.hpp"
#include "reach/model.hpp"
#include "reach/oracle.hpp"
#include "reach/policy.hpp"

namespace reach {
namespace io {

/// Malformed or unreadable input file; the message carries path and field
/// context.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LoadedModel {
    LhaModel model;
    std::string name;
};

/// Everything a run needs, as read from a problem file. The referenced model
/// is loaded (relative paths resolve against the problem file) and its
/// initial condition checked.
struct LoadedProblem {
    LhaModel model;
    std::string model_name;
    InitialCondition init;
    Problem problem;
    NumericsBudget budget;
    PolicyConfig policy;
    EngineConfig engine;
};

/// Parse a format_version 1 model file. Semantic validity is NOT enforced
/// here; run validate() on the result.
LoadedModel load_model(const std::filesystem::path& path);

LoadedProblem load_problem(const std::filesystem::path& path);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);
/// Same, in scientific notation.
std::string format_double_sci(double v);

/// One Reached-log record as a JSON line.
std::string step_to_json_line(const ReachStep& step, const LhaModel& model);

/// Inverse of step_to_json_line; numeric fields reconstruct bit-for-bit.
ReachStep step_from_json_line(const std::string& line, const LhaModel& model);

std::string reached_jsonl(const ReachResult& result, const LhaModel& model);
std::vector<ReachStep> parse_reached_jsonl(const std::string& text, const LhaModel& model);

std::string polygons_csv(const ReachResult& result, const LhaModel& model);
std::string summary_json(const ReachResult& result, const LhaModel& model);
std::string reach_svg(const ReachResult& result, const LhaModel& model);

std::string validation_report_json(const ValidationReport& report);

/// Write reached.jsonl, reach_polygons.csv, summary.json and reach.svg under
/// out_dir (created if missing); each file lands atomically via a temp-file
/// rename.
void write_run_artifacts(const std::filesystem::path& out_dir, const ReachResult& result,
                         const LhaModel& model);

/// Write trace.csv and events.csv for a simulated execution.
void write_trace_artifacts(const std::filesystem::path& out_dir, const oracle::Trace& trace,
                           const LhaModel& model);

}  // namespace io
}  // namespace reach
