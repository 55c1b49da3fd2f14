// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
#include "reach/io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace reach {
namespace io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParseError("cannot read '" + path.string() + "'");
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void atomic_write(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        os << content;
        if (!os) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

json parse_json(const std::string& text, const fs::path& path) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

const json& field(const json& j, const char* key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(ctx + ": missing field '" + key + "'");
    return *it;
}

double num(const json& j, const std::string& ctx) {
    if (!j.is_number()) throw ParseError(ctx + ": expected a number");
    return j.get<double>();
}

Vec vec2(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.size() != 2) throw ParseError(ctx + ": expected [x, y]");
    return Vec{num(j[0], ctx), num(j[1], ctx)};
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

std::string format_double_sci(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific);
    return std::string(buf, r.ptr);
}

LoadedModel load_model(const fs::path& path) {
    const json j = parse_json(read_file(path), path);
    const std::string ctx = path.string();
    if (field(j, "format_version", ctx) != 1)
        throw ParseError(ctx + ": unsupported format_version");
    const auto dim = field(j, "dim", ctx).get<std::size_t>();
    if (dim != 2) throw ParseError(ctx + ": only dim = 2 is supported by the planar kernel");

    const json& jb = field(j, "state_box", ctx);
    Box box;
    try {
        box = Box(vec2(field(jb, "lower", ctx + ".state_box"), ctx),
                  vec2(field(jb, "upper", ctx + ".state_box"), ctx));
    } catch (const std::invalid_argument& e) {
        throw ParseError(ctx + ".state_box: " + e.what());
    }

    std::vector<Cell> cells;
    std::vector<std::string> cell_names;
    for (const json& jc : field(j, "cells", ctx)) {
        const std::string cctx = ctx + ".cells[" + std::to_string(cells.size()) + "]";
        Cell c;
        c.name = field(jc, "id", cctx).get<std::string>();
        std::vector<Vec> pts;
        for (const json& jv : field(jc, "vertices", cctx)) pts.push_back(vec2(jv, cctx));
        if (pts.empty()) throw ParseError(cctx + ": no vertices");
        c.poly = Polytope::hull_of(pts);
        cell_names.push_back(c.name);
        cells.push_back(std::move(c));
    }

    std::vector<Location> locs;
    for (const json& jl : field(j, "locations", ctx)) {
        const std::string lctx = ctx + ".locations[" + std::to_string(locs.size()) + "]";
        Location l;
        l.name = field(jl, "id", lctx).get<std::string>();
        const json& ja = field(jl, "A", lctx);
        if (!ja.is_array() || ja.size() != dim)
            throw ParseError(lctx + ".A: expected " + std::to_string(dim) + " rows");
        Mat a(dim);
        for (std::size_t r = 0; r < dim; ++r) {
            if (!ja[r].is_array() || ja[r].size() != dim)
                throw ParseError(lctx + ".A: expected " + std::to_string(dim) + " columns");
            for (std::size_t cidx = 0; cidx < dim; ++cidx) a(r, cidx) = num(ja[r][cidx], lctx + ".A");
        }
        l.A = a;
        l.u = vec2(field(jl, "u", lctx), lctx + ".u");
        for (const json& jc : field(jl, "cells", lctx)) {
            const std::string name = jc.get<std::string>();
            bool found = false;
            for (std::size_t i = 0; i < cell_names.size(); ++i)
                if (cell_names[i] == name) {
                    l.cells.push_back(i);
                    found = true;
                    break;
                }
            if (!found) throw ParseError(lctx + ": unknown cell '" + name + "'");
        }
        locs.push_back(std::move(l));
    }

    LoadedModel out{LhaModel::make(std::move(box), std::move(cells), std::move(locs)),
                    j.value("name", path.stem().string())};
    return out;
}

LoadedProblem load_problem(const fs::path& path) {
    const json j = parse_json(read_file(path), path);
    const std::string ctx = path.string();
    if (field(j, "format_version", ctx) != 1)
        throw ParseError(ctx + ": unsupported format_version");

    fs::path model_path = field(j, "model", ctx).get<std::string>();
    if (model_path.is_relative()) model_path = path.parent_path() / model_path;
    LoadedModel lm = load_model(model_path);

    const ValidationReport rep = validate(lm.model);
    if (!rep.valid()) {
        std::string msg = ctx + ": model '" + lm.name + "' is invalid:";
        for (const auto& v : rep.violations) msg += "\n  [" + v.code + "] " + v.message;
        throw ParseError(msg);
    }

    LoadedProblem out{std::move(lm.model), std::move(lm.name), {}, {}, {}, {}, {}};

    const json& ji = field(j, "initial", ctx);
    const std::string loc_name = field(ji, "location", ctx + ".initial").get<std::string>();
    const auto li = out.model.location_index(loc_name);
    if (!li) throw ParseError(ctx + ".initial: unknown location '" + loc_name + "'");
    out.init.location = *li;
    out.init.x0 = vec2(field(ji, "x0", ctx + ".initial"), ctx + ".initial.x0");
    {
        bool inside = false;
        for (std::size_t ci : out.model.locations()[*li].cells)
            inside = inside || out.model.cells()[ci].poly.contains(out.init.x0, SetMode::Closed);
        if (!inside)
            throw ParseError(ctx + ".initial: x0 lies outside the invariant of '" + loc_name + "'");
    }

    out.problem.T = num(field(j, "T", ctx), ctx + ".T");
    if (!(out.problem.T >= 0.0)) throw ParseError(ctx + ".T: must be >= 0");
    out.problem.N = field(j, "N", ctx).get<std::uint64_t>();
    out.problem.epsilon = num(field(j, "epsilon", ctx), ctx + ".epsilon");
    if (!(out.problem.epsilon > 0.0)) throw ParseError(ctx + ".epsilon: must be > 0");

    if (j.contains("budget")) {
        const json& jbud = j["budget"];
        out.budget.sigma_e = jbud.value("sigma_e", out.budget.sigma_e);
        out.budget.sigma_i = jbud.value("sigma_i", out.budget.sigma_i);
        out.budget.mu_c = jbud.value("mu_c", out.budget.mu_c);
        out.budget.mu_h = jbud.value("mu_h", out.budget.mu_h);
        try {
            out.budget.check();
        } catch (const std::invalid_argument& e) {
            throw ParseError(ctx + ".budget: " + e.what());
        }
    }
    if (j.contains("policy")) {
        const json& jp = j["policy"];
        out.policy.delta = jp.value("delta", out.policy.delta);
        out.policy.max_retries = jp.value("max_retries", out.policy.max_retries);
        out.policy.shrink = jp.value("shrink", out.policy.shrink);
        if (!(out.policy.delta > 0.0)) throw ParseError(ctx + ".policy.delta: must be > 0");
    }
    if (j.contains("engine")) {
        const json& je = j["engine"];
        out.engine.epsilon_trans = je.value("epsilon_trans", out.engine.epsilon_trans);
        out.engine.refine_subdivisions =
            je.value("refine_subdivisions", out.engine.refine_subdivisions);
        out.engine.max_steps = je.value("max_steps", out.engine.max_steps);
        if (out.engine.refine_subdivisions < 1)
            throw ParseError(ctx + ".engine.refine_subdivisions: must be >= 1");
    }
    return out;
}

namespace {

void append_vertices(std::string& s, const Polytope& p) {
    s += '[';
    bool first = true;
    for (const auto& v : p.vertices()) {
        if (!first) s += ',';
        first = false;
        s += '[';
        s += format_double(v[0]);
        s += ',';
        s += format_double(v[1]);
        s += ']';
    }
    s += ']';
}

Polytope vertices_from_json(const json& j, const std::string& ctx) {
    std::vector<Vec> pts;
    for (const json& jv : j) pts.push_back(vec2(jv, ctx));
    if (pts.empty()) return Polytope::empty();
    return Polytope::hull_of(pts);
}

}  // namespace

std::string step_to_json_line(const ReachStep& step, const LhaModel& model) {
    std::string s = "{\"k\":" + std::to_string(step.k);
    s += ",\"t\":" + format_double(step.t);
    s += ",\"location\":\"" + model.locations()[step.location].name + "\"";
    s += ",\"jump\":" + std::to_string(step.jump_count);
    s += ",\"rho\":" + format_double(step.rho);
    s += ",\"t_slop\":" + format_double(step.t_slop);
    s += ",\"params\":{\"delta\":" + format_double(step.params.delta);
    s += ",\"gamma\":" + format_double(step.params.gamma);
    s += ",\"h\":" + format_double(step.params.h) + "}";
    s += ",\"d_hat\":";
    append_vertices(s, step.d_hat);
    s += ",\"d_hat_gamma\":";
    append_vertices(s, step.d_hat_gamma);
    s += "}";
    return s;
}

ReachStep step_from_json_line(const std::string& line, const LhaModel& model) {
    const json j = parse_json(line, "reached.jsonl");
    ReachStep s;
    s.k = j.at("k").get<std::uint64_t>();
    s.t = j.at("t").get<double>();
    const auto li = model.location_index(j.at("location").get<std::string>());
    if (!li) throw ParseError("reached.jsonl: unknown location");
    s.location = *li;
    s.jump_count = j.at("jump").get<std::uint64_t>();
    s.rho = j.at("rho").get<double>();
    s.t_slop = j.at("t_slop").get<double>();
    s.params.delta = j.at("params").at("delta").get<double>();
    s.params.gamma = j.at("params").at("gamma").get<double>();
    s.params.h = j.at("params").at("h").get<double>();
    s.d_hat = vertices_from_json(j.at("d_hat"), "reached.jsonl.d_hat");
    s.d_hat_gamma = vertices_from_json(j.at("d_hat_gamma"), "reached.jsonl.d_hat_gamma");
    return s;
}

std::string reached_jsonl(const ReachResult& result, const LhaModel& model) {
    std::string out;
    for (const auto& s : result.steps) {
        out += step_to_json_line(s, model);
        out += '\n';
    }
    return out;
}

std::vector<ReachStep> parse_reached_jsonl(const std::string& text, const LhaModel& model) {
    std::vector<ReachStep> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        out.push_back(step_from_json_line(line, model));
    }
    return out;
}

std::string polygons_csv(const ReachResult& result, const LhaModel& model) {
    std::string out = "k,t,location,jump,vx0,vy0,vx1,vy1,...\n";
    for (const auto& s : result.steps) {
        out += std::to_string(s.k) + ',' + format_double(s.t) + ',' +
               model.locations()[s.location].name + ',' + std::to_string(s.jump_count);
        for (const auto& v : s.d_hat_gamma.vertices())
            out += ',' + format_double(v[0]) + ',' + format_double(v[1]);
        out += '\n';
    }
    return out;
}

std::string summary_json(const ReachResult& result, const LhaModel& model) {
    std::string s = "{\n";
    s += "  \"format_version\": 1,\n";
    s += "  \"termination\": \"" + std::string(to_string(result.termination)) + "\",\n";
    if (!result.termination_detail.empty()) {
        json d = result.termination_detail;  // quoting
        s += "  \"termination_detail\": " + d.dump() + ",\n";
    }
    s += "  \"t_f\": " + format_double(result.t_f) + ",\n";
    s += "  \"steps\": " + std::to_string(result.step_count) + ",\n";
    s += "  \"jumps\": " + std::to_string(result.jumps) + ",\n";
    s += "  \"final_rho\": " + format_double_sci(result.final_rho) + ",\n";
    s += "  \"retries\": " + std::to_string(result.failures.size()) + ",\n";
    s += "  \"transitions\": [";
    for (std::size_t i = 0; i < result.transitions.size(); ++i) {
        const auto& tr = result.transitions[i];
        if (i) s += ',';
        s += "\n    {\"jump\": " + std::to_string(tr.jump_index);
        s += ", \"step\": " + std::to_string(tr.step);
        s += ", \"from\": \"" + model.locations()[tr.from].name + "\"";
        s += ", \"to\": \"" + model.locations()[tr.to].name + "\"";
        s += ", \"bracket\": [" + format_double(tr.bracket_lo) + ", " +
             format_double(tr.bracket_hi) + "]}";
    }
    s += result.transitions.empty() ? "],\n" : "\n  ],\n";
    s += "  \"failures\": [";
    for (std::size_t i = 0; i < result.failures.size(); ++i) {
        const auto& f = result.failures[i];
        if (i) s += ',';
        s += "\n    {\"step\": " + std::to_string(f.step);
        s += ", \"kind\": \"" + std::string(to_string(f.kind)) + "\"";
        s += ", \"retry\": " + std::to_string(f.retry) + "}";
    }
    s += result.failures.empty() ? "]\n" : "\n  ]\n";
    s += "}\n";
    return s;
}

namespace {

const char* kPalette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52",
                          "#8172b3", "#937860", "#da8bc3", "#8c8c8c"};

}  // namespace

std::string reach_svg(const ReachResult& result, const LhaModel& model) {
    const Box& box = model.state_box();
    const double w = box.upper[0] - box.lower[0];
    const double h = box.upper[1] - box.lower[1];
    const double scale = 860.0 / std::max(w, h);
    const double margin = 20.0;
    auto px = [&](double x) { return margin + (x - box.lower[0]) * scale; };
    auto py = [&](double y) { return margin + (box.upper[1] - y) * scale; };
    auto poly_points = [&](const Polytope& p) {
        std::string s;
        for (const auto& v : p.vertices()) {
            if (!s.empty()) s += ' ';
            s += format_double(px(v[0])) + ',' + format_double(py(v[1]));
        }
        return s;
    };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
                      format_double(2 * margin + w * scale) + " " +
                      format_double(2 * margin + h * scale) + "\">\n";
    svg += "<rect x=\"" + format_double(px(box.lower[0])) + "\" y=\"" +
           format_double(py(box.upper[1])) + "\" width=\"" + format_double(w * scale) +
           "\" height=\"" + format_double(h * scale) +
           "\" fill=\"white\" stroke=\"#333\" stroke-width=\"1\"/>\n";

    for (std::size_t li = 0; li < model.locations().size(); ++li) {
        const char* color = kPalette[li % (sizeof(kPalette) / sizeof(kPalette[0]))];
        for (std::size_t ci : model.locations()[li].cells)
            svg += "<polygon points=\"" + poly_points(model.cells()[ci].poly) + "\" fill=\"" +
                   color + "\" fill-opacity=\"0.12\" stroke=\"#666\" stroke-width=\"0.6\"/>\n";
    }
    for (const auto& s : result.steps)
        svg += "<polygon points=\"" + poly_points(s.d_hat_gamma) +
               "\" fill=\"#1f3d7a\" fill-opacity=\"0.05\" stroke=\"#1f3d7a\" "
               "stroke-width=\"0.4\"/>\n";
    if (!result.steps.empty()) {
        const Vec c = result.steps.front().d_hat.centroid();
        svg += "<circle cx=\"" + format_double(px(c[0])) + "\" cy=\"" + format_double(py(c[1])) +
               "\" r=\"3\" fill=\"#c44e52\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

std::string validation_report_json(const ValidationReport& report) {
    json arr = json::array();
    for (const auto& v : report.violations) arr.push_back({{"code", v.code}, {"message", v.message}});
    return arr.dump(2);
}

void write_run_artifacts(const fs::path& out_dir, const ReachResult& result,
                         const LhaModel& model) {
    fs::create_directories(out_dir);
    atomic_write(out_dir / "reached.jsonl", reached_jsonl(result, model));
    atomic_write(out_dir / "reach_polygons.csv", polygons_csv(result, model));
    atomic_write(out_dir / "summary.json", summary_json(result, model));
    atomic_write(out_dir / "reach.svg", reach_svg(result, model));
}

void write_trace_artifacts(const fs::path& out_dir, const oracle::Trace& trace,
                           const LhaModel& model) {
    fs::create_directories(out_dir);
    std::string csv = "t,x1,x2,location\n";
    for (const auto& s : trace.samples)
        csv += format_double(s.t) + ',' + format_double(s.x[0]) + ',' + format_double(s.x[1]) +
               ',' + model.locations()[s.location].name + '\n';
    atomic_write(out_dir / "trace.csv", csv);

    std::string ev = "t,from,to,x1,x2\n";
    for (const auto& e : trace.events)
        ev += format_double(e.t) + ',' + model.locations()[e.from].name + ',' +
              model.locations()[e.to].name + ',' + format_double(e.x[0]) + ',' +
              format_double(e.x[1]) + '\n';
    atomic_write(out_dir / "events.csv", ev);
}

}  // namespace io
}  // namespace reach
