#include "ofldg/timestep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace ofldg {

void StepControl::validate() const
{
    if (!(cfl > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "cfl must be positive");
    }
    double total = 0.0;
    for (int d = 0; d < 2; ++d) {
        if (!(b_bound[d] >= 0.0) || !(c_bound[d] >= 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "step bounds must be non-negative");
        }
        total += b_bound[d] + c_bound[d];
    }
    if (!(total > 0.0)) {
        throw Error(ErrorCode::ZeroDenominator, "diffusion and convection bounds are both zero");
    }
}

double default_cfl(int k)
{
    // h^2 * spectral radius of the periodic heat operator with theta = 1, by degree
    static constexpr std::array<double, 9> rho{4.0,    36.0,   148.258, 438.907, 1045.29,
                                               2142.67, 3945.04, 6705.26, 10715.1};
    // the real-axis stability limit of SSP-RK3 is about 2.51
    constexpr double limit = 2.0;
    if (k < 0 || k >= static_cast<int>(rho.size())) {
        throw Error(ErrorCode::DegreeOutOfRange, "no cfl table entry for degree " + std::to_string(k));
    }
    return std::min(0.1, limit / rho[static_cast<std::size_t>(k)]);
}

double dt_1d(const StepControl& ctrl, const Mesh1D& mesh)
{
    if (!(ctrl.cfl > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "cfl must be positive");
    }
    const double denom = ctrl.b_bound[0] / (mesh.h * mesh.h) + ctrl.c_bound[0] / mesh.h;
    if (!(denom > 0.0)) {
        throw Error(ErrorCode::ZeroDenominator, "diffusion and convection bounds are both zero");
    }
    return ctrl.cfl / denom;
}

double dt_2d(const StepControl& ctrl, const Mesh2D& mesh)
{
    if (!(ctrl.cfl > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "cfl must be positive");
    }
    const double denom = ctrl.b_bound[0] / (mesh.hx * mesh.hx) + ctrl.b_bound[1] / (mesh.hy * mesh.hy) +
                         ctrl.c_bound[0] / mesh.hx + ctrl.c_bound[1] / mesh.hy;
    if (!(denom > 0.0)) {
        throw Error(ErrorCode::ZeroDenominator, "diffusion and convection bounds are both zero");
    }
    return ctrl.cfl / denom;
}

ValueRange widen(ValueRange range)
{
    // total width grows by 10%, split evenly between the ends
    double pad = 0.05 * (range.hi - range.lo);
    if (!(pad > 0.0)) {
        pad = 0.05 * std::max(1.0, std::max(std::abs(range.lo), std::abs(range.hi)));
    }
    return {range.lo - pad, range.hi + pad};
}

void fill_bounds(StepControl& ctrl, const ProblemSpec& problem, ValueRange range)
{
    constexpr int samples = 2001;
    for (int d = 0; d < problem.dim; ++d) {
        double b = 0.0;
        double c = 0.0;
        for (int s = 0; s < samples; ++s) {
            const double v = range.lo + (range.hi - range.lo) * s / (samples - 1);
            b = std::max(b, std::abs(problem.coeffs[d].a(v)));
            c = std::max(c, std::abs(problem.coeffs[d].df(v)));
        }
        ctrl.b_bound[d] = b;
        ctrl.c_bound[d] = c;
    }
}

} // namespace ofldg
