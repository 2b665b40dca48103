#pragma once

#include <span>
#include <vector>

namespace ofldg {

/// Gauss-Legendre rule on [-1, 1].
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
};

/// Supports 1 <= n_points <= 32.
QuadRule gauss_rule(int n_points);

/// Legendre polynomial P_l scaled to unit L2 norm on [-1, 1].
double legendre_orthonormal(int l, double x);

/// d^m/dx^m of legendre_orthonormal(l, .) on the reference interval.
double legendre_orthonormal_derivative(int l, int m, double x);

/// Physical derivative of order deriv_order of sum_l coeffs[l] * phi_l at the
/// reference point x_ref, for a cell of width cell_width.
double eval_poly(std::span<const double> coeffs, double x_ref, int deriv_order, double cell_width);

/// Tabulated orthonormal Legendre basis of degree k: values and reference
/// derivatives at the nodes of a Gauss rule, and all derivatives at +-1.
class BasisSet {
public:
    BasisSet(int k, int n_quad);

    int degree() const { return k_; }
    int n_modes() const { return k_ + 1; }
    const QuadRule& quad() const { return quad_; }
    int n_quad() const { return quad_.size(); }

    /// phi_m(node q)
    double value(int q, int m) const { return values_[q * n_modes() + m]; }
    /// phi_m'(node q), reference coordinate
    double derivative(int q, int m) const { return derivs_[q * n_modes() + m]; }
    /// d^d phi_m / dxi^d at xi = -1
    double left(int m, int d = 0) const { return left_[d * n_modes() + m]; }
    /// d^d phi_m / dxi^d at xi = +1
    double right(int m, int d = 0) const { return right_[d * n_modes() + m]; }

private:
    int k_;
    QuadRule quad_;
    std::vector<double> values_;
    std::vector<double> derivs_;
    std::vector<double> left_;
    std::vector<double> right_;
};

} // namespace ofldg
