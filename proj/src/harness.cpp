#include "ofldg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "ofldg/error.hpp"

namespace ofldg {

void RunOptions::validate() const
{
    if (k < 0 || k > 8) {
        throw Error(ErrorCode::DegreeOutOfRange, "polynomial degree must be in 0..8");
    }
    if (damping && k < 1) {
        throw Error(ErrorCode::InvalidArgument, "damping requires k >= 1");
    }
    if (cfl && !(*cfl > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "cfl must be positive");
    }
    if (convection == ConvectionFlux::UpwindBiased && !(theta_upwind > 0.5)) {
        throw Error(ErrorCode::InvalidArgument, "upwind-biased flux requires theta > 1/2");
    }
    if (nx < 0 || ny < 0) {
        throw Error(ErrorCode::TooFewCells, "negative resolution");
    }
}

double RunOptions::effective_cfl() const
{
    return cfl.value_or(default_cfl(k));
}

ValueRange initial_value_range(const ProblemSpec& problem)
{
    ValueRange r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    const auto include = [&r](double v) {
        r.lo = std::min(r.lo, v);
        r.hi = std::max(r.hi, v);
    };
    const auto [x0, x1] = problem.x_range;
    const auto [y0, y1] = problem.y_range;
    if (problem.dim == 1) {
        constexpr int samples = 2001;
        for (int s = 0; s < samples; ++s) {
            include(problem.initial(x0 + (x1 - x0) * s / (samples - 1), 0.0));
        }
    } else {
        constexpr int samples = 401;
        for (int sy = 0; sy < samples; ++sy) {
            const double y = y0 + (y1 - y0) * sy / (samples - 1);
            for (int sx = 0; sx < samples; ++sx) {
                include(problem.initial(x0 + (x1 - x0) * sx / (samples - 1), y));
            }
        }
    }
    const BoundaryPair bc = problem.boundary_at(problem.t_start);
    for (int d = 0; d < problem.dim; ++d) {
        if (!bc[d].is_periodic()) {
            include(bc[d].left_value);
            include(bc[d].right_value);
        }
    }
    return r;
}

std::vector<CellAverage> cell_averages(const Solution& solution)
{
    return std::visit([](const auto& u) { return cell_averages(u); }, solution);
}

TraceSample trace_sample(double t, const Solution& solution)
{
    TraceSample s;
    s.t = t;
    std::visit(
        [&s](const auto& u) {
            s.mass = mass(u);
            s.l2_norm = l2_norm(u);
        },
        solution);
    const auto avg = cell_averages(solution);
    s.min_avg = std::numeric_limits<double>::infinity();
    s.max_avg = -std::numeric_limits<double>::infinity();
    for (const auto& a : avg) {
        s.min_avg = std::min(s.min_avg, a.mean);
        s.max_avg = std::max(s.max_avg, a.mean);
    }
    return s;
}

namespace {

template <class Field>
TraceSample sample_field(double t, const Field& u)
{
    TraceSample s;
    s.t = t;
    s.mass = mass(u);
    s.l2_norm = l2_norm(u);
    s.min_avg = std::numeric_limits<double>::infinity();
    s.max_avg = -std::numeric_limits<double>::infinity();
    for (const auto& a : cell_averages(u)) {
        s.min_avg = std::min(s.min_avg, a.mean);
        s.max_avg = std::max(s.max_avg, a.mean);
    }
    return s;
}

template <class Field, class Scheme>
void advance(RunResult& result, Field u, const Scheme& scheme, double t_start, double t_end,
             const std::vector<double>& snapshots, int trace_every)
{
    IntegrationObserver<Field> observer;
    observer.snapshot_times = snapshots;
    observer.on_snapshot = [&result](double t, const Field& v) { result.snapshots.push_back({t, cell_averages(v)}); };
    observer.trace_every = trace_every;
    observer.on_trace = [&result](double t, const Field& v) { result.trace.push_back(sample_field(t, v)); };
    const auto rhs = [&scheme](const Field& v, double t, Field& out) { scheme.rhs(v, t, out); };
    const IntegrationStats stats = integrate(u, t_start, t_end, result.dt, rhs, observer);
    result.steps = stats.steps;
    result.t_final = std::max(stats.t_final, t_start);
    result.solution = std::move(u);
}

} // namespace

RunResult run_problem(const ProblemSpec& problem, const RunOptions& options)
{
    options.validate();
    RunResult result;
    result.problem = problem.name;
    result.dim = problem.dim;
    result.initial_range = initial_value_range(problem);

    StepControl& ctrl = result.control;
    ctrl.cfl = options.effective_cfl();
    ctrl.t_end = options.t_end.value_or(problem.t_end);
    fill_bounds(ctrl, problem, widen(result.initial_range));

    FluxConfig& flux = result.flux;
    flux.convection = options.convection;
    flux.c_bound = ctrl.c_bound;
    flux.theta_upwind = options.theta_upwind;
    flux.theta_diff = {options.theta_diff, options.theta_diff};
    flux.validate();

    const DampingParams damping{options.damping, options.k};
    std::vector<double> snapshots = options.snapshot_times.value_or(problem.snapshot_times);
    std::erase_if(snapshots, [&](double t) { return t < problem.t_start || t > ctrl.t_end; });

    if (problem.dim == 1) {
        const int n = options.nx > 0 ? options.nx : problem.default_nx;
        const Mesh1D mesh = build_uniform_1d(problem.x_range[0], problem.x_range[1], n);
        result.nx = n;
        const Scheme1D scheme(problem, flux, damping, mesh, options.k);
        DGField1D u = l2_project([&problem](double x) { return problem.initial(x, 0.0); }, mesh, options.k);
        result.dt = dt_1d(ctrl, mesh);
        advance(result, std::move(u), scheme, problem.t_start, ctrl.t_end, snapshots, options.trace_every);
        if (problem.exact) {
            const double t = result.t_final;
            const auto exact = [&problem, t](double x) { return problem.exact(x, 0.0, t); };
            const auto& u = std::get<DGField1D>(result.solution);
            const auto [lo, hi] = problem.error_window.value_or(problem.x_range);
            result.error = scale_norms(norms(u, exact, lo, hi), options.norm_scaling, hi - lo);
        }
    } else {
        const int nx = options.nx > 0 ? options.nx : problem.default_nx;
        const int ny = options.ny > 0 ? options.ny : (options.nx > 0 ? options.nx : problem.default_ny);
        const Mesh2D mesh =
            build_uniform_2d(problem.x_range[0], problem.x_range[1], problem.y_range[0], problem.y_range[1], nx, ny);
        result.nx = nx;
        result.ny = ny;
        const Scheme2D scheme(problem, flux, damping, mesh, options.k, options.space);
        DGField2D u = l2_project(problem.initial, mesh, options.k, options.space);
        result.dt = dt_2d(ctrl, mesh);
        advance(result, std::move(u), scheme, problem.t_start, ctrl.t_end, snapshots, options.trace_every);
        if (problem.exact) {
            const double t = result.t_final;
            const double area =
                (problem.x_range[1] - problem.x_range[0]) * (problem.y_range[1] - problem.y_range[0]);
            result.error = scale_norms(norms(std::get<DGField2D>(result.solution),
                                             [&problem, t](double x, double y) { return problem.exact(x, y, t); }),
                                       options.norm_scaling, area);
        }
    }
    return result;
}

double empirical_order(double e_prev, double e, int n_prev, int n)
{
    return std::log(e_prev / e) / std::log(static_cast<double>(n) / n_prev);
}

void compute_orders(std::vector<ConvergenceRow>& rows)
{
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == 0) {
            rows[i].order_l1.reset();
            rows[i].order_l2.reset();
            rows[i].order_linf.reset();
            continue;
        }
        const auto& a = rows[i - 1];
        auto& b = rows[i];
        b.order_l1 = empirical_order(a.error.l1, b.error.l1, a.resolution, b.resolution);
        b.order_l2 = empirical_order(a.error.l2, b.error.l2, a.resolution, b.resolution);
        b.order_linf = empirical_order(a.error.linf, b.error.linf, a.resolution, b.resolution);
    }
}

ConvergenceReport run_convergence(const ProblemSpec& problem, const RunOptions& options,
                                  const std::vector<int>& resolutions)
{
    if (!problem.exact) {
        throw Error(ErrorCode::MissingExactSolution, "problem '" + problem.name + "' has no exact solution");
    }
    ConvergenceReport report;
    report.problem = problem.name;
    report.k = options.k;
    report.theta = options.theta_diff;
    report.flux = options.convection == ConvectionFlux::LocalLaxFriedrichs ? "llf" : "upwind";
    report.cfl = options.effective_cfl();
    report.damping = options.damping;
    report.norm_scaling = options.norm_scaling;
    for (int n : resolutions) {
        RunOptions run = options;
        run.nx = n;
        run.ny = n;
        run.snapshot_times = std::vector<double>{};
        run.trace_every = 0;
        const RunResult r = run_problem(problem, run);
        report.rows.push_back({n, *r.error, {}, {}, {}});
    }
    compute_orders(report.rows);
    return report;
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report)
{
    out << "resolution,L1,order_L1,L2,order_L2,Linf,order_Linf\n";
    char buf[64];
    const auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    const auto opt = [&num](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
    for (const auto& row : report.rows) {
        out << row.resolution << ',' << num(row.error.l1) << ',' << opt(row.order_l1) << ',' << num(row.error.l2)
            << ',' << opt(row.order_l2) << ',' << num(row.error.linf) << ',' << opt(row.order_linf) << '\n';
    }
}

OscillationMetrics oscillation_metrics(const std::vector<CellAverage>& averages, ValueRange initial_range, int nx)
{
    OscillationMetrics m;
    for (const auto& a : averages) {
        m.overshoot = std::max(m.overshoot, a.mean - initial_range.hi);
        m.undershoot = std::max(m.undershoot, initial_range.lo - a.mean);
    }
    const std::size_t n = averages.size();
    if (nx <= 0) {
        for (std::size_t i = 1; i < n; ++i) {
            m.total_variation += std::abs(averages[i].mean - averages[i - 1].mean);
        }
        return m;
    }
    const std::size_t row = static_cast<std::size_t>(nx);
    for (std::size_t c = 0; c < n; ++c) {
        if ((c % row) + 1 < row) {
            m.total_variation += std::abs(averages[c + 1].mean - averages[c].mean);
        }
        if (c + row < n) {
            m.total_variation += std::abs(averages[c + row].mean - averages[c].mean);
        }
    }
    return m;
}

OscillationMetrics oscillation_metrics(const Solution& solution, ValueRange initial_range)
{
    const int nx = std::holds_alternative<DGField2D>(solution) ? std::get<DGField2D>(solution).mesh().nx : 0;
    return oscillation_metrics(cell_averages(solution), initial_range, nx);
}

DampingComparison compare_damping(const ProblemSpec& problem, const RunOptions& options)
{
    DampingComparison out;
    RunOptions on = options;
    on.damping = true;
    RunOptions off = options;
    off.damping = false;
    out.damped = run_problem(problem, on);
    out.undamped = run_problem(problem, off);
    out.damped_metrics = oscillation_metrics(out.damped.solution, out.damped.initial_range);
    out.undamped_metrics = oscillation_metrics(out.undamped.solution, out.undamped.initial_range);
    return out;
}

std::vector<TraceSample> trace_diagnostics(const ProblemSpec& problem, RunOptions options, int every)
{
    options.trace_every = std::max(every, 1);
    return run_problem(problem, options).trace;
}

Norms difference_norms(const DGField1D& coarse, const DGField1D& reference)
{
    const Mesh1D& mesh = reference.mesh();
    const int nq = reference.degree() + 3;
    const QuadRule quad = gauss_rule(nq);
    Norms out;
    double l2sq = 0.0;
    for (int j = 0; j < mesh.n_cells; ++j) {
        for (int q = 0; q < nq; ++q) {
            const double x = mesh.center(j) + 0.5 * mesh.h * quad.nodes[q];
            const int jc = coarse.mesh().locate(x);
            const double xi = 2.0 * (x - coarse.mesh().center(jc)) / coarse.mesh().h;
            const double d = reference.eval(j, quad.nodes[q]) - coarse.eval(jc, xi);
            const double w = 0.5 * mesh.h * quad.weights[q];
            out.l1 += w * std::abs(d);
            l2sq += w * d * d;
            out.linf = std::max(out.linf, std::abs(d));
        }
    }
    out.l2 = std::sqrt(l2sq);
    return out;
}

} // namespace ofldg
