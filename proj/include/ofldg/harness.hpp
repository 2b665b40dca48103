#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ofldg/field.hpp"
#include "ofldg/flux.hpp"
#include "ofldg/problems.hpp"
#include "ofldg/semidiscrete.hpp"
#include "ofldg/timestep.hpp"

namespace ofldg {

/// Everything that parameterizes one simulation besides the problem itself.
struct RunOptions {
    int k = 2;
    /// 0 selects the problem default.
    int nx = 0;
    int ny = 0;
    /// Unset selects default_cfl(k).
    std::optional<double> cfl;
    double theta_diff = 1.0;
    ConvectionFlux convection = ConvectionFlux::LocalLaxFriedrichs;
    double theta_upwind = 1.0;
    bool damping = true;
    Space space = Space::TotalDegree;
    std::optional<double> t_end;
    /// Absolute output times; unset selects the problem's schedule.
    std::optional<std::vector<double>> snapshot_times;
    /// Record a TraceSample every n steps; 0 disables.
    int trace_every = 0;
    NormScaling norm_scaling = NormScaling::Integral;

    /// Rejects k < 0, damping with k = 0, theta_upwind <= 1/2 and cfl <= 0.
    void validate() const;
    double effective_cfl() const;
};

struct Snapshot {
    double t = 0.0;
    std::vector<CellAverage> averages;
};

struct TraceSample {
    double t = 0.0;
    double mass = 0.0;
    double l2_norm = 0.0;
    double min_avg = 0.0;
    double max_avg = 0.0;
};

using Solution = std::variant<DGField1D, DGField2D>;

struct RunResult {
    std::string problem;
    int dim = 1;
    int nx = 0;
    int ny = 0;
    Solution solution;
    double t_final = 0.0;
    long steps = 0;
    double dt = 0.0;
    StepControl control;
    FluxConfig flux;
    ValueRange initial_range;
    std::vector<Snapshot> snapshots;
    std::vector<TraceSample> trace;
    /// Error against the exact solution at t_final, when one is known.
    std::optional<Norms> error;
};

/// Step bounds and LLF viscosity derived from the initial data's value range.
ValueRange initial_value_range(const ProblemSpec& problem);

RunResult run_problem(const ProblemSpec& problem, const RunOptions& options);

std::vector<CellAverage> cell_averages(const Solution& solution);
TraceSample trace_sample(double t, const Solution& solution);

struct ConvergenceRow {
    int resolution = 0;
    Norms error;
    std::optional<double> order_l1;
    std::optional<double> order_l2;
    std::optional<double> order_linf;
};

struct ConvergenceReport {
    std::string problem;
    int k = 0;
    double theta = 1.0;
    std::string flux;
    double cfl = 0.1;
    bool damping = true;
    NormScaling norm_scaling = NormScaling::Integral;
    std::vector<ConvergenceRow> rows;
};

/// log(e_prev / e) / log(n / n_prev)
double empirical_order(double e_prev, double e, int n_prev, int n);
/// Fills the order columns of rows (first row left empty).
void compute_orders(std::vector<ConvergenceRow>& rows);

/// Runs the problem at each resolution (nx = ny = N in 2D) and measures the
/// error against its exact solution.
ConvergenceReport run_convergence(const ProblemSpec& problem, const RunOptions& options,
                                  const std::vector<int>& resolutions);

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report);

struct OscillationMetrics {
    /// max cell average above the initial max, floored at 0
    double overshoot = 0.0;
    /// initial min minus min cell average, floored at 0
    double undershoot = 0.0;
    /// sum of |differences| between neighboring cell averages (both
    /// directions in 2D)
    double total_variation = 0.0;
};

OscillationMetrics oscillation_metrics(const std::vector<CellAverage>& averages, ValueRange initial_range, int nx = 0);
OscillationMetrics oscillation_metrics(const Solution& solution, ValueRange initial_range);

struct DampingComparison {
    RunResult damped;
    RunResult undamped;
    OscillationMetrics damped_metrics;
    OscillationMetrics undamped_metrics;
};

/// Two runs that differ only in whether the damping term is active.
DampingComparison compare_damping(const ProblemSpec& problem, const RunOptions& options);

/// Run with a trace sample every `every` steps.
std::vector<TraceSample> trace_diagnostics(const ProblemSpec& problem, RunOptions options, int every);

/// L1/L2/Linf of coarse - reference, integrated on the reference mesh (the
/// reference cells must nest inside the coarse cells).
Norms difference_norms(const DGField1D& coarse, const DGField1D& reference);

} // namespace ofldg
