#pragma once

#include <utility>
#include <vector>

#include "ofldg/damping.hpp"
#include "ofldg/field.hpp"
#include "ofldg/flux.hpp"
#include "ofldg/problems.hpp"

namespace ofldg {

/// 1D LDG discretization with damping. The auxiliary variable q = g(u)_x is
/// recomputed from u on every evaluation; each face flux is evaluated once and
/// scattered to both neighbors.
class Scheme1D {
public:
    Scheme1D(ProblemSpec problem, FluxConfig flux, DampingParams damping, const Mesh1D& mesh, int k);

    const ProblemSpec& problem() const { return problem_; }
    const FluxConfig& flux() const { return flux_; }
    const DampingParams& damping() const { return damping_; }
    const Mesh1D& mesh() const { return mesh_; }
    int degree() const { return k_; }

    DGField1D solve_q(const DGField1D& u, double t) const;
    /// du/dt; writes the q used along the way when q_out is given.
    void rhs(const DGField1D& u, double t, DGField1D& dudt, DGField1D* q_out = nullptr) const;
    DGField1D rhs(const DGField1D& u, double t) const;

private:
    void evaluate(const DGField1D& u, double t, DGField1D& q, DGField1D* dudt) const;

    ProblemSpec problem_;
    FluxConfig flux_;
    DampingParams damping_;
    Mesh1D mesh_;
    int k_;
    BasisSet basis_;
    Damping1D damper_;
};

class Scheme2D {
public:
    Scheme2D(ProblemSpec problem, FluxConfig flux, DampingParams damping, const Mesh2D& mesh, int k,
             Space space = Space::TotalDegree);

    const ProblemSpec& problem() const { return problem_; }
    const FluxConfig& flux() const { return flux_; }
    const DampingParams& damping() const { return damping_; }
    const Mesh2D& mesh() const { return mesh_; }
    const ModeSet& modes() const { return modes_; }
    int degree() const { return modes_.degree(); }

    std::pair<DGField2D, DGField2D> solve_q(const DGField2D& u, double t) const;
    void rhs(const DGField2D& u, double t, DGField2D& dudt, DGField2D* q1_out = nullptr,
             DGField2D* q2_out = nullptr) const;
    DGField2D rhs(const DGField2D& u, double t) const;

private:
    void evaluate(const DGField2D& u, double t, DGField2D& q1, DGField2D& q2, DGField2D* dudt) const;

    ProblemSpec problem_;
    FluxConfig flux_;
    DampingParams damping_;
    Mesh2D mesh_;
    ModeSet modes_;
    int nq_;
    QuadRule quad_;
    // volume tables [q * n_modes + m], q = qx + nq * qy
    std::vector<double> phi_, phi_x_, phi_y_, weight_;
    // edge tables [p * n_modes + m]: east (xi = 1), west, north (eta = 1), south
    std::vector<double> east_, west_, north_, south_;
    Damping2D damper_;
};

DGField1D solve_q_1d(const DGField1D& u, const ProblemSpec& problem, const FluxConfig& cfg, double t = 0.0);
DGField1D rhs_u_1d(const DGField1D& u, const ProblemSpec& problem, const FluxConfig& cfg,
                   const DampingParams& damping, double t = 0.0);
std::pair<DGField2D, DGField2D> solve_q12_2d(const DGField2D& u, const ProblemSpec& problem, const FluxConfig& cfg,
                                             double t = 0.0);
DGField2D rhs_u_2d(const DGField2D& u, const ProblemSpec& problem, const FluxConfig& cfg,
                   const DampingParams& damping, double t = 0.0);

/// Discrete L2 inner product of two fields on the same mesh.
double inner_product(const DGField1D& a, const DGField1D& b);
double inner_product(const DGField2D& a, const DGField2D& b);

/// <du/dt, u> + ||q||^2 (2D: + ||q1||^2 + ||q2||^2); the stability estimate
/// says this is <= 0 for periodic or compactly supported data.
double energy_balance(const Scheme1D& scheme, const DGField1D& u, double t = 0.0);
double energy_balance(const Scheme2D& scheme, const DGField2D& u, double t = 0.0);

} // namespace ofldg
