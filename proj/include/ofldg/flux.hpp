#pragma once

#include <array>

#include "ofldg/problems.hpp"

namespace ofldg {

enum class ConvectionFlux { LocalLaxFriedrichs, UpwindBiased };
enum class Direction { X = 0, Y = 1 };

/// Numerical flux parameters. c_bound is the Lax-Friedrichs viscosity per
/// direction; theta_upwind weights the left state of the upwind-biased flux;
/// theta_diff is the diffusion-flux parameter per direction (1 gives the
/// alternating flux: g from the left, q from the right).
struct FluxConfig {
    ConvectionFlux convection = ConvectionFlux::LocalLaxFriedrichs;
    std::array<double, 2> c_bound{0.0, 0.0};
    double theta_upwind = 1.0;
    std::array<double, 2> theta_diff{1.0, 1.0};
    double jump_tol = 1e-12;

    static FluxConfig lax_friedrichs(double c_bound, double theta_diff = 1.0);
    static FluxConfig upwind_biased(double theta, double theta_diff = 1.0);

    /// Throws Error(InvalidArgument) if the upwind-biased theta is <= 1/2 or
    /// a bound is negative or non-finite.
    void validate() const;
};

double convective_flux(const FluxConfig& cfg, const ScalarFn& f, double uL, double uR, Direction dir = Direction::X);

/// [[g(u)]] / [[u]], replaced by b({u}) when the jump is below
/// jump_tol * max(1, |uL|, |uR|).
double degenerate_ratio(const ScalarFn& g, const ScalarFn& b, double uL, double uR, double jump_tol);
/// Same, with g(uL) and g(uR) already evaluated.
double degenerate_ratio(double gL, double gR, const ScalarFn& b, double uL, double uR, double jump_tol);

struct DiffusiveFlux {
    /// Diffusive part of the u flux: -r {q} - gamma [[q]].
    double hu = 0.0;
    /// q flux: -{g(u)} + gamma [[u]].
    double hq = 0.0;
};

/// Generalized alternating fluxes with r = degenerate_ratio and
/// gamma = (theta - 1/2) r.
DiffusiveFlux diffusive_flux(const Coefficients& c, double theta, double jump_tol, double uL, double uR, double qL,
                             double qR);
DiffusiveFlux diffusive_fluxes_1d(const FluxConfig& cfg, const ProblemSpec& problem, double uL, double uR, double qL,
                                  double qR);
DiffusiveFlux diffusive_fluxes_2d(const FluxConfig& cfg, const ProblemSpec& problem, Direction dir, double uL,
                                  double uR, double qL, double qR);

} // namespace ofldg
