#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ofldg/geometry.hpp"

namespace ofldg {

using ScalarFn = std::function<double(double)>;

/// Closed forms for one spatial direction of u_t + div(f(u) - a(u) grad u) = 0,
/// with b = sqrt(a) and g an antiderivative of b.
struct Coefficients {
    ScalarFn f;
    ScalarFn df;
    ScalarFn a;
    ScalarFn b;
    ScalarFn g;
};

struct ProblemSpec {
    std::string name;
    int dim = 1;
    /// [0] is the x direction, [1] the y direction (unused in 1D).
    std::array<Coefficients, 2> coeffs;
    /// u(x, y, t_start); y is ignored in 1D.
    std::function<double(double, double)> initial;
    BoundaryPair bc{BoundaryKind::periodic(), BoundaryKind::periodic()};
    /// Exact solution u(x, y, t) when one is known.
    std::function<double(double, double, double)> exact;
    /// Take Dirichlet data from the exact solution at the current time instead
    /// of the constants in bc.
    bool dirichlet_from_exact = false;

    std::array<double, 2> x_range{0.0, 1.0};
    std::array<double, 2> y_range{0.0, 1.0};
    double t_start = 0.0;
    double t_end = 1.0;
    int default_nx = 100;
    int default_ny = 0;
    std::vector<double> snapshot_times;
    /// Error norms are measured on this x interval only (1D).
    std::optional<std::array<double, 2>> error_window;

    /// Boundary conditions with Dirichlet values resolved at time t (1D only
    /// uses the x entry).
    BoundaryPair boundary_at(double t) const;
};

/// Barenblatt solution of u_t = (u^m)_xx.
double barenblatt(double x, double t, double m);
/// Half-width of the Barenblatt support at time t.
double barenblatt_support(double t, double m);

ProblemSpec make_pme_1d(double m);
/// The m = 8 Barenblatt run on [-6, 6], t: 1 -> 1.05, with errors measured on the
/// smooth interior [-1.5, 1.5].
ProblemSpec make_pme_1d_accuracy();
ProblemSpec make_two_box();

enum class BuckleyLeverettCase { Ramp, Riemann, RiemannGravity };
ProblemSpec make_buckley_leverett(BuckleyLeverettCase which);
/// Riemann datum; gravity selects the flux with gravitational effects.
ProblemSpec make_buckley_leverett(bool gravity);

ProblemSpec make_strongly_degenerate_1d();
ProblemSpec make_heat_2d();
ProblemSpec make_pme_2d();
ProblemSpec make_strongly_degenerate_2d();

/// Names accepted by make_problem.
std::vector<std::string> problem_names();
/// Looks a problem up by CLI name (`pme1d{m}`, `pme1d-accuracy`, `twobox`,
/// `bl`, `bl-gravity`, `bl-riemann`, `sd1d`, `heat2d`, `pme2d`, `sd2d`).
/// Throws Error(InvalidArgument) on unknown names.
ProblemSpec make_problem(const std::string& name);

} // namespace ofldg
