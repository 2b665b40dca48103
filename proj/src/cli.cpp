#include "ofldg/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#ifdef OFLDG_HAVE_OPENMP
#include <omp.h>
#endif

#include "ofldg/error.hpp"
#include "ofldg/problems.hpp"

#ifndef OFLDG_VERSION
#define OFLDG_VERSION "unknown"
#endif

namespace ofldg::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void bad_key(const std::string& key, const std::string& why)
{
    throw Error(ErrorCode::ConfigParse, "config key '" + key + "': " + why);
}

template <class T>
T get(const json& doc, const std::string& key)
{
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        bad_key(key, e.what());
    }
}

ConvectionFlux parse_convection(const std::string& name)
{
    if (name == "llf") {
        return ConvectionFlux::LocalLaxFriedrichs;
    }
    if (name == "upwind") {
        return ConvectionFlux::UpwindBiased;
    }
    bad_key("convection_flux", "expected \"llf\" or \"upwind\", got \"" + name + "\"");
}

const char* convection_name(ConvectionFlux c)
{
    return c == ConvectionFlux::LocalLaxFriedrichs ? "llf" : "upwind";
}

Space parse_space(const std::string& name)
{
    if (name == "Pk") {
        return Space::TotalDegree;
    }
    if (name == "Qk") {
        return Space::TensorProduct;
    }
    bad_key("space_2d", "expected \"Pk\" or \"Qk\", got \"" + name + "\"");
}

NormScaling parse_norm(const std::string& name)
{
    if (name == "integral") {
        return NormScaling::Integral;
    }
    if (name == "domain-mean") {
        return NormScaling::DomainMean;
    }
    bad_key("norm", "expected \"integral\" or \"domain-mean\", got \"" + name + "\"");
}

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string resolution_tag(int nx, int ny, int dim)
{
    return dim == 1 ? std::to_string(nx) : std::to_string(nx) + "x" + std::to_string(ny);
}

std::ofstream open_out(const fs::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::ConfigParse, "cannot write " + path.string());
    }
    return out;
}

void write_json(const fs::path& path, const json& doc)
{
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

json norms_json(const Norms& n)
{
    return {{"l1", n.l1}, {"l2", n.l2}, {"linf", n.linf}};
}

json metrics_json(const OscillationMetrics& m)
{
    return {{"overshoot", m.overshoot}, {"undershoot", m.undershoot}, {"total_variation", m.total_variation}};
}

json run_json(const RunResult& r)
{
    json out = {{"nx", r.nx},
                {"t_final", r.t_final},
                {"steps", r.steps},
                {"dt", r.dt},
                {"effective_cfl", r.control.cfl},
                {"b_bound", r.control.b_bound},
                {"c_bound", r.control.c_bound},
                {"initial_range", {r.initial_range.lo, r.initial_range.hi}}};
    if (r.dim == 2) {
        out["ny"] = r.ny;
    }
    if (r.error) {
        out["error"] = norms_json(*r.error);
    }
    return out;
}

// Snapshot files for every scheduled time plus the final state when the
// schedule does not already end there.
std::vector<fs::path> write_snapshots(const RunConfig& config, const RunResult& r)
{
    std::vector<fs::path> files;
    auto snaps = r.snapshots;
    if (snaps.empty() || std::abs(snaps.back().t - r.t_final) > 1e-12 * std::max(1.0, std::abs(r.t_final))) {
        snaps.push_back({r.t_final, cell_averages(r.solution)});
    }
    for (const auto& s : snaps) {
        const fs::path path = config.output_dir / snapshot_file_name(r.problem, r.nx, r.ny, r.dim, s.t);
        auto out = open_out(path);
        write_cell_averages_csv(out, s.averages, r.dim);
        files.push_back(path);
    }
    return files;
}

std::vector<double> effective_snapshots(const RunOptions& o, const ProblemSpec& problem)
{
    std::vector<double> times = o.snapshot_times.value_or(problem.snapshot_times);
    const double t_end = o.t_end.value_or(problem.t_end);
    std::erase_if(times, [&](double t) { return t < problem.t_start || t > t_end; });
    return times;
}

} // namespace

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys{
        "problem",  "k",          "nx",          "ny",           "n",        "cfl",
        "theta_diff", "convection_flux", "theta_upwind", "damping", "space_2d", "snapshot_times",
        "t_end",    "trace_every", "resolutions", "output_dir",   "norm"};
    return keys;
}

RunConfig parse_config(const json& doc)
{
    if (!doc.is_object()) {
        throw Error(ErrorCode::ConfigParse, "config must be a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end()) {
            bad_key(key, "unknown key");
        }
    }
    if (!doc.contains("problem")) {
        bad_key("problem", "missing");
    }
    RunConfig c;
    c.problem = get<std::string>(doc, "problem");
    // rejects unknown names before anything is allocated
    const ProblemSpec problem = make_problem(c.problem);

    RunOptions& o = c.options;
    if (doc.contains("k")) {
        o.k = get<int>(doc, "k");
    }
    if (doc.contains("n")) {
        o.nx = o.ny = get<int>(doc, "n");
    }
    if (doc.contains("nx")) {
        o.nx = get<int>(doc, "nx");
    }
    if (doc.contains("ny")) {
        o.ny = get<int>(doc, "ny");
    }
    if (doc.contains("cfl")) {
        o.cfl = get<double>(doc, "cfl");
    }
    if (doc.contains("theta_diff")) {
        o.theta_diff = get<double>(doc, "theta_diff");
    }
    if (doc.contains("convection_flux")) {
        o.convection = parse_convection(get<std::string>(doc, "convection_flux"));
    }
    if (doc.contains("theta_upwind")) {
        o.theta_upwind = get<double>(doc, "theta_upwind");
    }
    if (doc.contains("damping")) {
        o.damping = get<bool>(doc, "damping");
    }
    if (doc.contains("space_2d")) {
        o.space = parse_space(get<std::string>(doc, "space_2d"));
    }
    if (doc.contains("snapshot_times")) {
        o.snapshot_times = get<std::vector<double>>(doc, "snapshot_times");
    }
    if (doc.contains("t_end")) {
        o.t_end = get<double>(doc, "t_end");
    }
    if (doc.contains("trace_every")) {
        o.trace_every = get<int>(doc, "trace_every");
        if (o.trace_every < 0) {
            bad_key("trace_every", "must be >= 0");
        }
    }
    if (doc.contains("norm")) {
        o.norm_scaling = parse_norm(get<std::string>(doc, "norm"));
    }
    if (doc.contains("resolutions")) {
        c.resolutions = get<std::vector<int>>(doc, "resolutions");
        for (int n : c.resolutions) {
            if (n < 2) {
                bad_key("resolutions", "every entry must be >= 2");
            }
        }
    }
    if (doc.contains("output_dir")) {
        c.output_dir = get<std::string>(doc, "output_dir");
    }
    if (c.resolutions.empty()) {
        c.resolutions = problem.dim == 2 ? std::vector<int>{10, 20, 40} : std::vector<int>{40, 80, 160, 320};
    }
    o.validate();
    return c;
}

json load_config(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ConfigParse, "cannot read config " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ConfigParse, path.string() + ": " + e.what());
    }
}

void apply_override(json& doc, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw Error(ErrorCode::ConfigParse, "override '" + assignment + "' is not key=value");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end()) {
        bad_key(key, "unknown key");
    }
    json value = json::parse(text, nullptr, false);
    doc[key] = value.is_discarded() ? json(text) : value;
}

json describe(const RunConfig& config, const ProblemSpec& problem)
{
    const RunOptions& o = config.options;
    json out = {{"problem", config.problem},
                {"dim", problem.dim},
                {"k", o.k},
                {"cfl", o.effective_cfl()},
                {"cfl_from_default", !o.cfl.has_value()},
                {"theta_diff", o.theta_diff},
                {"convection_flux", convection_name(o.convection)},
                {"theta_upwind", o.theta_upwind},
                {"damping", o.damping},
                {"t_start", problem.t_start},
                {"t_end", o.t_end.value_or(problem.t_end)},
                {"snapshot_times", effective_snapshots(o, problem)},
                {"trace_every", o.trace_every},
                {"norm", o.norm_scaling == NormScaling::Integral ? "integral" : "domain-mean"},
                {"output_dir", config.output_dir.string()},
                {"x_range", problem.x_range}};
    out["nx"] = o.nx > 0 ? o.nx : problem.default_nx;
    if (problem.dim == 2) {
        out["ny"] = o.ny > 0 ? o.ny : (o.nx > 0 ? o.nx : problem.default_ny);
        out["y_range"] = problem.y_range;
        out["space_2d"] = o.space == Space::TotalDegree ? "Pk" : "Qk";
    }
    return out;
}

std::string snapshot_file_name(const std::string& problem, int nx, int ny, int dim, double t)
{
    char tbuf[32];
    std::snprintf(tbuf, sizeof tbuf, "%g", t);
    return problem + "_" + resolution_tag(nx, ny, dim) + "_" + tbuf + ".csv";
}

std::vector<fs::path> cmd_run(const RunConfig& config, std::ostream& log)
{
    const ProblemSpec problem = make_problem(config.problem);
    fs::create_directories(config.output_dir);
    const auto t0 = std::chrono::steady_clock::now();
    const RunResult r = run_problem(problem, config.options);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::vector<fs::path> files = write_snapshots(config, r);
    const std::string stem = r.problem + "_" + resolution_tag(r.nx, r.ny, r.dim);
    if (!r.trace.empty()) {
        const fs::path path = config.output_dir / (stem + "_trace.csv");
        auto out = open_out(path);
        out << "t,mass,l2_norm,min_avg,max_avg\n";
        for (const auto& s : r.trace) {
            out << fmt17(s.t) << ',' << fmt17(s.mass) << ',' << fmt17(s.l2_norm) << ',' << fmt17(s.min_avg) << ','
                << fmt17(s.max_avg) << '\n';
        }
        files.push_back(path);
    }
    const fs::path manifest = config.output_dir / (stem + "_manifest.json");
    json doc = {{"command", "run"},
                {"version", OFLDG_VERSION},
                {"parameters", describe(config, problem)},
                {"result", run_json(r)},
                {"runtime_seconds", seconds}};
    for (const auto& f : files) {
        doc["files"].push_back(f.filename().string());
    }
    write_json(manifest, doc);
    files.push_back(manifest);
    log << r.problem << ": " << r.steps << " steps to t = " << r.t_final << " in " << seconds << " s\n";
    if (r.error) {
        log << "  L1 " << r.error->l1 << "  L2 " << r.error->l2 << "  Linf " << r.error->linf << '\n';
    }
    return files;
}

std::vector<fs::path> cmd_convergence(const RunConfig& config, std::ostream& log)
{
    const ProblemSpec problem = make_problem(config.problem);
    fs::create_directories(config.output_dir);
    const auto t0 = std::chrono::steady_clock::now();
    const ConvergenceReport report = run_convergence(problem, config.options, config.resolutions);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::string stem = config.problem + "_k" + std::to_string(config.options.k) + "_convergence";
    const fs::path csv = config.output_dir / (stem + ".csv");
    {
        auto out = open_out(csv);
        write_convergence_csv(out, report);
    }
    json rows = json::array();
    for (const auto& row : report.rows) {
        json j = {{"resolution", row.resolution}, {"error", norms_json(row.error)}};
        if (row.order_l1) {
            j["order"] = {{"l1", *row.order_l1}, {"l2", *row.order_l2}, {"linf", *row.order_linf}};
        }
        rows.push_back(j);
    }
    json params = describe(config, problem);
    params["resolutions"] = config.resolutions;
    params.erase("nx");
    params.erase("ny");
    const fs::path js = config.output_dir / (stem + ".json");
    write_json(js, {{"command", "convergence"},
                    {"version", OFLDG_VERSION},
                    {"parameters", params},
                    {"rows", rows},
                    {"runtime_seconds", seconds},
                    {"files", {csv.filename().string()}}});
    write_convergence_csv(log, report);
    return {csv, js};
}

std::vector<fs::path> cmd_compare(const RunConfig& config, std::ostream& log)
{
    const ProblemSpec problem = make_problem(config.problem);
    if (config.options.k < 1) {
        throw Error(ErrorCode::InvalidArgument, "compare needs k >= 1 so the damped variant exists");
    }
    fs::create_directories(config.output_dir);
    const auto t0 = std::chrono::steady_clock::now();
    const DampingComparison cmp = compare_damping(problem, config.options);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const RunResult& d = cmp.damped;
    const std::string stem = d.problem + "_" + resolution_tag(d.nx, d.ny, d.dim);
    std::vector<fs::path> files;
    for (const auto& [run, tag] : {std::pair{&cmp.damped, "damped"}, std::pair{&cmp.undamped, "undamped"}}) {
        const fs::path path = config.output_dir / (stem + "_" + tag + ".csv");
        auto out = open_out(path);
        write_cell_averages_csv(out, cell_averages(run->solution), run->dim);
        files.push_back(path);
    }
    json params = describe(config, problem);
    params.erase("damping");
    json doc = {{"command", "compare"},
                {"version", OFLDG_VERSION},
                {"parameters", params},
                {"damped", run_json(cmp.damped)},
                {"undamped", run_json(cmp.undamped)},
                {"metrics", {{"damped", metrics_json(cmp.damped_metrics)}, {"undamped", metrics_json(cmp.undamped_metrics)}}},
                {"overshoot_damped", cmp.damped_metrics.overshoot},
                {"overshoot_undamped", cmp.undamped_metrics.overshoot},
                {"runtime_seconds", seconds}};
    for (const auto& f : files) {
        doc["files"].push_back(f.filename().string());
    }
    const fs::path js = config.output_dir / (stem + "_compare.json");
    write_json(js, doc);
    files.push_back(js);
    log << "overshoot damped " << cmp.damped_metrics.overshoot << ", undamped " << cmp.undamped_metrics.overshoot
        << "; TV damped " << cmp.damped_metrics.total_variation << ", undamped "
        << cmp.undamped_metrics.total_variation << '\n';
    return files;
}

void cmd_list_problems(std::ostream& out)
{
    for (const auto& name : problem_names()) {
        const ProblemSpec p = make_problem(name);
        out << name << "  (" << p.dim << "D, t " << p.t_start << " -> " << p.t_end << (p.exact ? ", exact" : "")
            << ")\n";
    }
}

void configure_threads()
{
    const char* env = std::getenv("OFLDG_THREADS");
    if (env == nullptr || *env == '\0') {
        return;
    }
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 0) {
        throw Error(ErrorCode::ConfigParse, std::string("OFLDG_THREADS must be a non-negative integer, got '") + env +
                                                "'");
    }
#ifdef OFLDG_HAVE_OPENMP
    if (n > 0) {
        omp_set_num_threads(static_cast<int>(n));
    }
#endif
}

int exit_code_for(const std::exception& e)
{
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        return err->code() == ErrorCode::NonFiniteState ? 3 : 2;
    }
    return 3;
}

} // namespace ofldg::cli
