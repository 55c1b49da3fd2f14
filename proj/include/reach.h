/*
 * Copyright (c) 2026 the reach developers
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the reach shared library: bounded reach-set computation for
 * planar linear hybrid automata. All objects are opaque handles created and
 * destroyed here; every fallible call returns a reach_status, and
 * reach_last_error() describes the most recent failure on this thread.
 */
#ifndef REACH_H
#define REACH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum reach_status {
    REACH_OK = 0,
    REACH_ERR_INVALID_ARGUMENT = 1,
    REACH_ERR_IO = 2,
    REACH_ERR_PARSE = 3,
    REACH_ERR_INVALID_MODEL = 4,
    REACH_ERR_POLICY_EXHAUSTED = 5,
    REACH_ERR_MAX_STEPS = 6,
    REACH_ERR_SIMULATION = 7,
    REACH_ERR_INTERNAL = 8
} reach_status;

typedef struct reach_model reach_model;
typedef struct reach_problem reach_problem;
typedef struct reach_result reach_result;
typedef struct reach_trace reach_trace;

const char* reach_status_name(reach_status status);

/* Message for the most recent failure on the calling thread ("" if none). */
const char* reach_last_error(void);

/* ---- models ---- */

/* Parse a model file. On success *out owns the model. */
reach_status reach_model_load(const char* path, reach_model** out);

/* Semantic validation. Returns REACH_OK when valid, REACH_ERR_INVALID_MODEL
 * when violations were found. If report_json is non-NULL it receives a JSON
 * array describing every violation (empty array when valid); free it with
 * reach_string_free. */
reach_status reach_model_validate(const reach_model* model, char** report_json);

void reach_model_free(reach_model* model);

/* ---- problems ---- */

/* Parse a problem file; the referenced model is loaded (relative to the
 * problem file), validated, and the initial condition checked. */
reach_status reach_problem_load(const char* path, reach_problem** out);

void reach_problem_free(reach_problem* problem);

/* ---- reach-set runs ---- */

/* Run the bounded reach-set computation. max_steps_override = 0 keeps the
 * problem's configured cap. On REACH_OK, REACH_ERR_POLICY_EXHAUSTED and
 * REACH_ERR_MAX_STEPS, *out owns a result (possibly a partial log). */
reach_status reach_run(const reach_problem* problem, uint64_t max_steps_override,
                       reach_result** out);

/* Write reached.jsonl, reach_polygons.csv, summary.json and reach.svg. */
reach_status reach_result_write(const reach_result* result, const char* out_dir);

uint64_t reach_result_steps(const reach_result* result);
uint64_t reach_result_jumps(const reach_result* result);
double reach_result_tf(const reach_result* result);
double reach_result_final_rho(const reach_result* result);
/* "time bound", "jump bound", "policy exhausted" or "max steps exceeded". */
const char* reach_result_termination(const reach_result* result);

void reach_result_free(reach_result* result);

/* ---- simulation ---- */

/* High-resolution RK4 reference execution with the problem's horizon and
 * jump bound; step must be > 0. */
reach_status reach_simulate(const reach_problem* problem, double step, reach_trace** out);

/* Write trace.csv and events.csv. */
reach_status reach_trace_write(const reach_trace* trace, const char* out_dir);

uint64_t reach_trace_samples(const reach_trace* trace);
uint64_t reach_trace_events(const reach_trace* trace);

void reach_trace_free(reach_trace* trace);

void reach_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* REACH_H */
