#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ofldg/error.hpp"
#include "ofldg/geometry.hpp"
#include "ofldg/problems.hpp"

namespace ofldg {

/// CFL data: dt = cfl / (sum_d b_d / h_d^2 + c_d / h_d).
struct StepControl {
    double cfl = 0.1;
    /// max |a(u)| per direction
    std::array<double, 2> b_bound{0.0, 0.0};
    /// max |f'(u)| per direction
    std::array<double, 2> c_bound{0.0, 0.0};
    double t_end = 1.0;

    void validate() const;
};

/// Largest cfl (capped at 0.1) keeping SSP-RK3 stable for the P^k alternating-flux
/// diffusion operator, with a 20% margin. Per-direction sums make it valid in 2D too.
double default_cfl(int k);

double dt_1d(const StepControl& ctrl, const Mesh1D& mesh);
double dt_2d(const StepControl& ctrl, const Mesh2D& mesh);

struct ValueRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Range grown by 10% of its width, half on each side (10% of max(1, |value|)
/// when the range is a single value).
ValueRange widen(ValueRange range);

/// max |a| and max |f'| per direction over 2001 equispaced samples of range.
void fill_bounds(StepControl& ctrl, const ProblemSpec& problem, ValueRange range);

/// y = a*x + b*y, coefficientwise.
template <class Field>
void combine(Field& y, double a, const Field& x, double b)
{
    auto& yc = y.coeffs();
    const auto& xc = x.coeffs();
    for (std::size_t i = 0; i < yc.size(); ++i) {
        yc[i] = a * xc[i] + b * yc[i];
    }
}

/// Third-order SSP Runge-Kutta step; rhs(u, t, out) writes du/dt into out.
template <class Field, class Rhs>
Field ssp_rk3_step(const Field& u, double t, double dt, Rhs&& rhs)
{
    if (!(dt > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "time step must be positive");
    }
    Field k = u;
    Field stage = u;

    rhs(u, t, k);
    combine(stage, dt, k, 1.0); // u1 = u + dt L(u)

    rhs(stage, t + dt, k);
    combine(stage, dt, k, 1.0); // u1 + dt L(u1)
    combine(stage, 0.75, u, 0.25); // u2 = 3/4 u + 1/4 (u1 + dt L(u1))

    rhs(stage, t + 0.5 * dt, k);
    combine(stage, dt, k, 1.0);
    combine(stage, 1.0 / 3.0, u, 2.0 / 3.0); // 1/3 u + 2/3 (u2 + dt L(u2))
    return stage;
}

template <class Field>
struct IntegrationObserver {
    /// Absolute times at which on_snapshot fires; steps are clipped to land on them.
    std::vector<double> snapshot_times;
    std::function<void(double, const Field&)> on_snapshot;
    /// Call on_trace every trace_every steps (and at the start and end); 0 disables.
    int trace_every = 0;
    std::function<void(double, const Field&)> on_trace;
};

struct IntegrationStats {
    long steps = 0;
    double t_final = 0.0;
};

namespace detail {

template <class Field>
void check_finite(const Field& u, double t)
{
    const auto& c = u.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!std::isfinite(c[i])) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "non-finite coefficient in cell %zu at t = %.17g",
                          i / static_cast<std::size_t>(u.n_modes()), t);
            throw Error(ErrorCode::NonFiniteState, buf);
        }
    }
}

} // namespace detail

/// Advances u from t_start to t_end with fixed step dt (clipped to land on
/// snapshot times and t_end).
template <class Field, class Rhs>
IntegrationStats integrate(Field& u, double t_start, double t_end, double dt, Rhs&& rhs,
                           const IntegrationObserver<Field>& observer = {})
{
    if (!(dt > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "time step must be positive");
    }
    std::vector<double> stops = observer.snapshot_times;
    std::sort(stops.begin(), stops.end());
    const double eps = 1e-12 * std::max(1.0, std::abs(t_end));
    std::size_t next = 0;
    const auto fire_snapshots = [&](double t) {
        while (next < stops.size() && stops[next] <= t + eps) {
            if (observer.on_snapshot && stops[next] >= t_start - eps) {
                observer.on_snapshot(t, u);
            }
            ++next;
        }
    };

    IntegrationStats stats;
    double t = t_start;
    fire_snapshots(t);
    if (observer.trace_every > 0 && observer.on_trace) {
        observer.on_trace(t, u);
    }
    while (t < t_end - eps) {
        double stop = t_end;
        if (next < stops.size() && stops[next] < stop) {
            stop = stops[next];
        }
        const bool lands = t + dt >= stop - eps;
        const double step = lands ? stop - t : dt;
        u = ssp_rk3_step(u, t, step, rhs);
        t = lands ? stop : t + step;
        ++stats.steps;
        detail::check_finite(u, t);
        fire_snapshots(t);
        if (observer.trace_every > 0 && observer.on_trace &&
            (stats.steps % observer.trace_every == 0 || t >= t_end - eps)) {
            observer.on_trace(t, u);
        }
    }
    stats.t_final = t;
    return stats;
}

} // namespace ofldg
