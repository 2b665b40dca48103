#include "ofldg/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "ofldg/error.hpp"

namespace ofldg {

namespace {

Coefficients pme_coefficients(double m)
{
    Coefficients c;
    c.f = [](double) { return 0.0; };
    c.df = [](double) { return 0.0; };
    const double root_m = std::sqrt(m);
    c.a = [m](double u) { return u > 0.0 ? m * std::pow(u, m - 1.0) : 0.0; };
    c.b = [m, root_m](double u) { return u > 0.0 ? root_m * std::pow(u, 0.5 * (m - 1.0)) : 0.0; };
    c.g = [m, root_m](double u) { return u > 0.0 ? 2.0 * root_m / (1.0 + m) * std::pow(u, 0.5 * (m + 1.0)) : 0.0; };
    return c;
}

// u_t + (u^2)_x = eps (nu(u) u_x)_x with nu the indicator of |u| > 0.25
Coefficients strongly_degenerate_coefficients()
{
    constexpr double eps = 0.1;
    const double sqrt_eps = std::sqrt(eps);
    Coefficients c;
    c.f = [](double u) { return u * u; };
    c.df = [](double u) { return 2.0 * u; };
    c.a = [](double u) { return std::abs(u) > 0.25 ? eps : 0.0; };
    c.b = [sqrt_eps](double u) { return std::abs(u) > 0.25 ? sqrt_eps : 0.0; };
    c.g = [sqrt_eps](double u) {
        if (u < -0.25) {
            return sqrt_eps * (u + 0.25);
        }
        if (u > 0.25) {
            return sqrt_eps * (u - 0.25);
        }
        return 0.0;
    };
    return c;
}

Coefficients buckley_leverett_coefficients(bool gravity)
{
    constexpr double eps = 0.01;
    const double sqrt_eps = std::sqrt(eps);
    Coefficients c;
    const auto base = [](double u) { return u * u / (u * u + (1.0 - u) * (1.0 - u)); };
    const auto dbase = [](double u) {
        const double d = u * u + (1.0 - u) * (1.0 - u);
        return 2.0 * u * (1.0 - u) / (d * d);
    };
    if (gravity) {
        c.f = [base](double u) { return base(u) * (1.0 - 5.0 * (1.0 - u) * (1.0 - u)); };
        c.df = [base, dbase](double u) {
            return dbase(u) * (1.0 - 5.0 * (1.0 - u) * (1.0 - u)) + base(u) * 10.0 * (1.0 - u);
        };
    } else {
        c.f = base;
        c.df = dbase;
    }
    c.a = [](double u) { return (u >= 0.0 && u <= 1.0) ? eps * 4.0 * u * (1.0 - u) : 0.0; };
    c.b = [sqrt_eps](double u) { return (u >= 0.0 && u <= 1.0) ? sqrt_eps * 2.0 * std::sqrt(u * (1.0 - u)) : 0.0; };
    // u = sin^2(theta), g = sqrt(eps) (theta/2 - sin(4 theta)/8)
    c.g = [sqrt_eps](double u) {
        const double theta = std::asin(std::sqrt(std::clamp(u, 0.0, 1.0)));
        return sqrt_eps * (0.5 * theta - std::sin(4.0 * theta) / 8.0);
    };
    return c;
}

Coefficients heat_coefficients()
{
    Coefficients c;
    c.f = [](double) { return 0.0; };
    c.df = [](double) { return 0.0; };
    c.a = [](double) { return 1.0; };
    c.b = [](double) { return 1.0; };
    c.g = [](double u) { return u; };
    return c;
}

} // namespace

BoundaryPair ProblemSpec::boundary_at(double t) const
{
    if (!dirichlet_from_exact || !exact) {
        return bc;
    }
    BoundaryPair out = bc;
    out[0] = BoundaryKind::dirichlet(exact(x_range[0], 0.0, t), exact(x_range[1], 0.0, t));
    return out;
}

double barenblatt(double x, double t, double m)
{
    const double p = 1.0 / (m + 1.0);
    const double base = 1.0 - p * (m - 1.0) / (2.0 * m) * x * x / std::pow(t, 2.0 * p);
    if (base <= 0.0) {
        return 0.0;
    }
    return std::pow(t, -p) * std::pow(base, 1.0 / (m - 1.0));
}

double barenblatt_support(double t, double m)
{
    const double p = 1.0 / (m + 1.0);
    return std::pow(t, p) * std::sqrt(2.0 * m / (p * (m - 1.0)));
}

ProblemSpec make_pme_1d(double m)
{
    if (!(m > 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "porous medium exponent must exceed 1");
    }
    ProblemSpec p;
    char name[32];
    std::snprintf(name, sizeof name, "pme1d%g", m);
    p.name = name;
    p.dim = 1;
    p.coeffs[0] = pme_coefficients(m);
    p.initial = [m](double x, double) { return barenblatt(x, 1.0, m); };
    p.exact = [m](double x, double, double t) { return barenblatt(x, t, m); };
    p.bc[0] = BoundaryKind::compact_support();
    p.x_range = {-6.0, 6.0};
    p.t_start = 1.0;
    p.t_end = 2.0;
    p.default_nx = 320;
    return p;
}

ProblemSpec make_pme_1d_accuracy()
{
    ProblemSpec p = make_pme_1d(8.0);
    p.name = "pme1d-accuracy";
    p.error_window = std::array<double, 2>{-1.5, 1.5};
    p.t_end = 1.05;
    p.default_nx = 40;
    return p;
}

ProblemSpec make_two_box()
{
    ProblemSpec p;
    p.name = "twobox";
    p.dim = 1;
    p.coeffs[0] = pme_coefficients(8.0);
    p.initial = [](double x, double) {
        if (x > -4.0 && x < -1.0) {
            return 1.0;
        }
        if (x > 0.0 && x < 3.0) {
            return 1.5;
        }
        return 0.0;
    };
    p.bc[0] = BoundaryKind::compact_support();
    p.x_range = {-6.0, 6.0};
    p.t_start = 0.0;
    p.t_end = 1.0;
    p.default_nx = 240;
    p.snapshot_times = {0.0, 0.05, 0.08, 0.11, 0.14, 0.17, 0.20, 0.23, 0.50, 1.00};
    return p;
}

ProblemSpec make_buckley_leverett(BuckleyLeverettCase which)
{
    ProblemSpec p;
    p.dim = 1;
    p.coeffs[0] = buckley_leverett_coefficients(which == BuckleyLeverettCase::RiemannGravity);
    p.x_range = {0.0, 1.0};
    p.t_start = 0.0;
    p.t_end = 0.2;
    p.default_nx = 100;
    if (which == BuckleyLeverettCase::Ramp) {
        p.name = "bl";
        p.initial = [](double x, double) { return x <= 1.0 / 3.0 ? 1.0 - 3.0 * x : 0.0; };
        p.bc[0] = BoundaryKind::dirichlet(1.0, 0.0);
    } else {
        p.name = which == BuckleyLeverettCase::Riemann ? "bl-riemann" : "bl-gravity";
        const double jump_at = 1.0 - 1.0 / std::numbers::sqrt2;
        p.initial = [jump_at](double x, double) { return x < jump_at ? 0.0 : 1.0; };
        p.bc[0] = BoundaryKind::dirichlet(0.0, 1.0);
    }
    return p;
}

ProblemSpec make_buckley_leverett(bool gravity)
{
    return make_buckley_leverett(gravity ? BuckleyLeverettCase::RiemannGravity : BuckleyLeverettCase::Riemann);
}

ProblemSpec make_strongly_degenerate_1d()
{
    ProblemSpec p;
    p.name = "sd1d";
    p.dim = 1;
    p.coeffs[0] = strongly_degenerate_coefficients();
    const double c = 1.0 / std::numbers::sqrt2;
    p.initial = [c](double x, double) {
        if (x > -c - 0.4 && x < -c + 0.4) {
            return 1.0;
        }
        if (x > c - 0.4 && x < c + 0.4) {
            return -1.0;
        }
        return 0.0;
    };
    p.bc[0] = BoundaryKind::compact_support();
    p.x_range = {-2.0, 2.0};
    p.t_start = 0.0;
    p.t_end = 0.7;
    p.default_nx = 200;
    return p;
}

ProblemSpec make_heat_2d()
{
    ProblemSpec p;
    p.name = "heat2d";
    p.dim = 2;
    p.coeffs = {heat_coefficients(), heat_coefficients()};
    p.initial = [](double x, double y) { return std::sin(x + y); };
    p.exact = [](double x, double y, double t) { return std::exp(-2.0 * t) * std::sin(x + y); };
    p.bc = {BoundaryKind::periodic(), BoundaryKind::periodic()};
    p.x_range = {-std::numbers::pi, std::numbers::pi};
    p.y_range = {-std::numbers::pi, std::numbers::pi};
    p.t_start = 0.0;
    p.t_end = 2.0;
    p.default_nx = 20;
    p.default_ny = 20;
    return p;
}

ProblemSpec make_pme_2d()
{
    ProblemSpec p;
    p.name = "pme2d";
    p.dim = 2;
    p.coeffs = {pme_coefficients(2.0), pme_coefficients(2.0)};
    p.initial = [](double x, double y) {
        const double r1 = (x - 2.0) * (x - 2.0) + (y + 2.0) * (y + 2.0);
        if (r1 < 6.0) {
            return std::exp(-1.0 / (6.0 - r1));
        }
        const double r2 = (x + 2.0) * (x + 2.0) + (y - 2.0) * (y - 2.0);
        if (r2 < 6.0) {
            return std::exp(-1.0 / (6.0 - r2));
        }
        return 0.0;
    };
    p.bc = {BoundaryKind::periodic(), BoundaryKind::periodic()};
    p.x_range = {-10.0, 10.0};
    p.y_range = {-10.0, 10.0};
    p.t_start = 0.0;
    p.t_end = 4.0;
    p.default_nx = 80;
    p.default_ny = 80;
    p.snapshot_times = {0.0, 0.5, 1.0, 4.0};
    return p;
}

ProblemSpec make_strongly_degenerate_2d()
{
    ProblemSpec p;
    p.name = "sd2d";
    p.dim = 2;
    p.coeffs = {strongly_degenerate_coefficients(), strongly_degenerate_coefficients()};
    p.initial = [](double x, double y) {
        if ((x + 0.5) * (x + 0.5) + (y + 0.5) * (y + 0.5) < 0.16) {
            return 1.0;
        }
        if ((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5) < 0.16) {
            return -1.0;
        }
        return 0.0;
    };
    p.bc = {BoundaryKind::compact_support(), BoundaryKind::compact_support()};
    p.x_range = {-1.5, 1.5};
    p.y_range = {-1.5, 1.5};
    p.t_start = 0.0;
    p.t_end = 0.5;
    p.default_nx = 120;
    p.default_ny = 120;
    return p;
}

std::vector<std::string> problem_names()
{
    return {"pme1d2", "pme1d3", "pme1d5", "pme1d8", "pme1d-accuracy", "twobox", "bl", "bl-gravity",
            "bl-riemann", "sd1d", "heat2d", "pme2d", "sd2d"};
}

ProblemSpec make_problem(const std::string& name)
{
    if (name == "pme1d-accuracy") {
        return make_pme_1d_accuracy();
    }
    if (name == "twobox") {
        return make_two_box();
    }
    if (name == "bl") {
        return make_buckley_leverett(BuckleyLeverettCase::Ramp);
    }
    if (name == "bl-riemann") {
        return make_buckley_leverett(BuckleyLeverettCase::Riemann);
    }
    if (name == "bl-gravity") {
        return make_buckley_leverett(BuckleyLeverettCase::RiemannGravity);
    }
    if (name == "sd1d") {
        return make_strongly_degenerate_1d();
    }
    if (name == "heat2d") {
        return make_heat_2d();
    }
    if (name == "pme2d") {
        return make_pme_2d();
    }
    if (name == "sd2d") {
        return make_strongly_degenerate_2d();
    }
    if (name.rfind("pme1d", 0) == 0 && name.size() > 5) {
        const std::string tail = name.substr(5);
        std::size_t used = 0;
        double m = 0.0;
        try {
            m = std::stod(tail, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == tail.size() && m > 1.0) {
            return make_pme_1d(m);
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown problem '" + name + "'");
}

} // namespace ofldg
