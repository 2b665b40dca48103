#include "ofldg/basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ofldg/error.hpp"

namespace ofldg {

namespace {

// Values of P_0..P_n and P_0'..P_n' (classical normalization) at x.
void legendre_with_derivative(int n, double x, double& p, double& dp)
{
    double p_prev = 1.0;
    double p_cur = x;
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    for (int l = 1; l < n; ++l) {
        const double p_next = ((2 * l + 1) * x * p_cur - l * p_prev) / (l + 1);
        p_prev = p_cur;
        p_cur = p_next;
    }
    p = p_cur;
    // n (x P_n - P_{n-1}) / (x^2 - 1), valid away from the endpoints
    dp = n * (x * p_cur - p_prev) / (x * x - 1.0);
}

} // namespace

QuadRule gauss_rule(int n_points)
{
    if (n_points < 1 || n_points > 32) {
        throw Error(ErrorCode::UnsupportedOrder,
                    "gauss_rule supports 1..32 points, got " + std::to_string(n_points));
    }
    QuadRule rule;
    rule.nodes.resize(n_points);
    rule.weights.resize(n_points);
    const int half = (n_points + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n_points + 0.5));
        double p = 0.0;
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            legendre_with_derivative(n_points, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        legendre_with_derivative(n_points, x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n_points - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n_points - 1 - i] = w;
    }
    if (n_points % 2 == 1) {
        rule.nodes[n_points / 2] = 0.0;
    }
    return rule;
}

double legendre_orthonormal(int l, double x)
{
    return legendre_orthonormal_derivative(l, 0, x);
}

double legendre_orthonormal_derivative(int l, int m, double x)
{
    if (m > l) {
        return 0.0;
    }
    // table[d][n] = d-th derivative of P_n, built from
    // P^(d)_{n+1} = P^(d)_{n-1} + (2n+1) P^(d-1)_n
    // and P_{n+1} = ((2n+1) x P_n - n P_{n-1}) / (n+1).
    std::vector<double> prev_deriv(l + 1, 0.0);
    std::vector<double> cur(l + 1, 0.0);
    for (int d = 0; d <= m; ++d) {
        cur.assign(l + 1, 0.0);
        if (d == 0) {
            cur[0] = 1.0;
            if (l >= 1) {
                cur[1] = x;
            }
            for (int n = 1; n < l; ++n) {
                cur[n + 1] = ((2 * n + 1) * x * cur[n] - n * cur[n - 1]) / (n + 1);
            }
        } else {
            // P^(d)_n vanishes for n < d; P^(d)_d = (2d)! / (2^d d!)
            for (int n = 0; n < l; ++n) {
                const double below = n >= 1 ? cur[n - 1] : 0.0;
                cur[n + 1] = below + (2 * n + 1) * prev_deriv[n];
            }
        }
        prev_deriv = cur;
    }
    return std::sqrt((2.0 * l + 1.0) / 2.0) * cur[l];
}

double eval_poly(std::span<const double> coeffs, double x_ref, int deriv_order, double cell_width)
{
    double sum = 0.0;
    for (std::size_t l = 0; l < coeffs.size(); ++l) {
        sum += coeffs[l] * legendre_orthonormal_derivative(static_cast<int>(l), deriv_order, x_ref);
    }
    return sum * std::pow(2.0 / cell_width, deriv_order);
}

BasisSet::BasisSet(int k, int n_quad)
    : k_(k), quad_(gauss_rule(n_quad))
{
    if (k < 0) {
        throw Error(ErrorCode::DegreeOutOfRange, "negative polynomial degree");
    }
    const int nm = n_modes();
    values_.resize(n_quad * nm);
    derivs_.resize(n_quad * nm);
    for (int q = 0; q < n_quad; ++q) {
        for (int m = 0; m < nm; ++m) {
            values_[q * nm + m] = legendre_orthonormal(m, quad_.nodes[q]);
            derivs_[q * nm + m] = legendre_orthonormal_derivative(m, 1, quad_.nodes[q]);
        }
    }
    left_.resize((k + 1) * nm);
    right_.resize((k + 1) * nm);
    for (int d = 0; d <= k; ++d) {
        for (int m = 0; m < nm; ++m) {
            left_[d * nm + m] = legendre_orthonormal_derivative(m, d, -1.0);
            right_[d * nm + m] = legendre_orthonormal_derivative(m, d, 1.0);
        }
    }
}

} // namespace ofldg
