#pragma once

#include <vector>

#include "ofldg/field.hpp"

namespace ofldg {

struct DampingParams {
    bool enabled = true;
    int k = 1;

    /// Damping needs k >= 1; throws Error(InvalidArgument) otherwise.
    void validate() const;
};

/// 2(2l+1) h^l / ((2k-1) l!)
double damping_prefactor(int k, int l, double h);

/// sigma_j^l from the derivative jumps at the two faces of cell j.
double sigma_1d(const DGField1D& u, int cell, int l, const BoundaryKind& bc);

/// sigma_K^l from jumps of every d^alpha u_h, |alpha| = l, at the four
/// vertices of cell (i, j); at each vertex both edge-adjacent neighbors
/// contribute a squared jump.
double sigma_2d(const DGField2D& u, int i, int j, int l, const BoundaryPair& bc);

/// Tabulated damping operator for one mesh and degree. apply() adds
/// -sum_l sigma^l / h (u - P^{l-1} u) to a time-derivative field.
class Damping1D {
public:
    Damping1D(const Mesh1D& mesh, int k);

    /// sigma^l for all cells, laid out [cell * (k+1) + l].
    std::vector<double> sigmas(const DGField1D& u, const BoundaryKind& bc) const;
    void apply(const DGField1D& u, DGField1D& dudt, const BoundaryKind& bc) const;

private:
    Mesh1D mesh_;
    int k_;
    BasisSet basis_;
    std::vector<double> prefactor_;
};

class Damping2D {
public:
    Damping2D(const Mesh2D& mesh, const ModeSet& modes);

    /// sigma^l for all cells, laid out [cell * (k+1) + l].
    std::vector<double> sigmas(const DGField2D& u, const BoundaryPair& bc) const;
    void apply(const DGField2D& u, DGField2D& dudt, const BoundaryPair& bc) const;

private:
    // derivative of every (alpha_x, alpha_y) with |alpha| <= k at the corner
    // (sx, sy) of every cell, laid out [((cell * 4 + corner) * n_alpha + a]
    std::vector<double> corner_derivatives(const DGField2D& u) const;

    Mesh2D mesh_;
    ModeSet modes_;
    std::vector<std::array<int, 2>> alphas_;
    std::vector<int> alpha_order_;
    // [(corner * n_alpha + a) * n_modes + m]
    std::vector<double> table_;
    std::vector<double> prefactor_;
};

void apply_damping(const DGField1D& u, DGField1D& dudt, const DampingParams& params, const BoundaryKind& bc);
void apply_damping(const DGField2D& u, DGField2D& dudt, const DampingParams& params, const BoundaryPair& bc);

} // namespace ofldg
