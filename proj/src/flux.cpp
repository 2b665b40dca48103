#include "ofldg/flux.hpp"

#include <algorithm>
#include <cmath>

#include "ofldg/error.hpp"

namespace ofldg {

FluxConfig FluxConfig::lax_friedrichs(double c_bound, double theta_diff)
{
    FluxConfig cfg;
    cfg.convection = ConvectionFlux::LocalLaxFriedrichs;
    cfg.c_bound = {c_bound, c_bound};
    cfg.theta_diff = {theta_diff, theta_diff};
    cfg.validate();
    return cfg;
}

FluxConfig FluxConfig::upwind_biased(double theta, double theta_diff)
{
    FluxConfig cfg;
    cfg.convection = ConvectionFlux::UpwindBiased;
    cfg.theta_upwind = theta;
    cfg.theta_diff = {theta_diff, theta_diff};
    cfg.validate();
    return cfg;
}

void FluxConfig::validate() const
{
    if (convection == ConvectionFlux::UpwindBiased && !(theta_upwind > 0.5)) {
        throw Error(ErrorCode::InvalidArgument, "upwind-biased flux requires theta > 1/2");
    }
    for (double c : c_bound) {
        if (!(c >= 0.0) || !std::isfinite(c)) {
            throw Error(ErrorCode::InvalidArgument, "Lax-Friedrichs bound must be finite and non-negative");
        }
    }
    if (!(jump_tol >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "jump tolerance must be non-negative");
    }
}

double convective_flux(const FluxConfig& cfg, const ScalarFn& f, double uL, double uR, Direction dir)
{
    if (cfg.convection == ConvectionFlux::UpwindBiased) {
        return cfg.theta_upwind * f(uL) + (1.0 - cfg.theta_upwind) * f(uR);
    }
    const double c = cfg.c_bound[static_cast<int>(dir)];
    return 0.5 * (f(uL) + f(uR)) - 0.5 * c * (uR - uL);
}

double degenerate_ratio(const ScalarFn& g, const ScalarFn& b, double uL, double uR, double jump_tol)
{
    const double du = uR - uL;
    const double scale = std::max({1.0, std::abs(uL), std::abs(uR)});
    if (std::abs(du) > jump_tol * scale) {
        return (g(uR) - g(uL)) / du;
    }
    return b(0.5 * (uL + uR));
}

double degenerate_ratio(double gL, double gR, const ScalarFn& b, double uL, double uR, double jump_tol)
{
    const double du = uR - uL;
    const double scale = std::max({1.0, std::abs(uL), std::abs(uR)});
    if (std::abs(du) > jump_tol * scale) {
        return (gR - gL) / du;
    }
    return b(0.5 * (uL + uR));
}

DiffusiveFlux diffusive_flux(const Coefficients& c, double theta, double jump_tol, double uL, double uR, double qL,
                             double qR)
{
    const double r = degenerate_ratio(c.g, c.b, uL, uR, jump_tol);
    const double gamma = (theta - 0.5) * r;
    return {-r * 0.5 * (qL + qR) - gamma * (qR - qL), -0.5 * (c.g(uL) + c.g(uR)) + gamma * (uR - uL)};
}

DiffusiveFlux diffusive_fluxes_1d(const FluxConfig& cfg, const ProblemSpec& problem, double uL, double uR, double qL,
                                  double qR)
{
    return diffusive_flux(problem.coeffs[0], cfg.theta_diff[0], cfg.jump_tol, uL, uR, qL, qR);
}

DiffusiveFlux diffusive_fluxes_2d(const FluxConfig& cfg, const ProblemSpec& problem, Direction dir, double uL,
                                  double uR, double qL, double qR)
{
    const int d = static_cast<int>(dir);
    return diffusive_flux(problem.coeffs[d], cfg.theta_diff[d], cfg.jump_tol, uL, uR, qL, qR);
}

} // namespace ofldg
