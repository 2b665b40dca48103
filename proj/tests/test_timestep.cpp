#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "ofldg/error.hpp"
#include "ofldg/field.hpp"
#include "ofldg/problems.hpp"
#include "ofldg/semidiscrete.hpp"
#include "ofldg/timestep.hpp"

using namespace ofldg;

namespace {

// scalar stand-in for a field
struct Scalar {
    std::vector<double> c{0.0};
    std::vector<double>& coeffs() { return c; }
    const std::vector<double>& coeffs() const { return c; }
    int n_modes() const { return 1; }
};

} // namespace

TEST_SUITE("timestep")
{
    TEST_CASE("step formulas")
    {
        StepControl ctrl;
        ctrl.cfl = 0.1;
        ctrl.b_bound = {1.0, 0.0};
        CHECK(dt_1d(ctrl, build_uniform_1d(0, 1, 10)) == doctest::Approx(1e-3));

        ctrl.b_bound = {0.0, 0.0};
        ctrl.c_bound = {2.0, 0.0};
        CHECK(dt_1d(ctrl, build_uniform_1d(0, 1, 20)) == doctest::Approx(2.5e-3));

        ctrl.b_bound = {8.0, 0.0};
        ctrl.c_bound = {0.0, 0.0};
        CHECK(dt_1d(ctrl, build_uniform_1d(-6, 6, 320)) == doctest::Approx(1.7578125e-5));

        const double pi = std::numbers::pi;
        const double h = 2 * pi / 10;
        StepControl heat;
        heat.cfl = 0.1;
        heat.b_bound = {1.0, 1.0};
        const auto mesh = build_uniform_2d(-pi, pi, -pi, pi, 10, 10);
        CHECK(dt_2d(heat, mesh) == doctest::Approx(0.1 / (2 / (h * h))));
        StepControl one_d = heat;
        one_d.b_bound = {2.0, 0.0};
        CHECK(dt_2d(heat, mesh) == doctest::Approx(dt_1d(one_d, mesh.axis_x())));

        StepControl zero;
        CHECK_THROWS_AS(dt_2d(zero, mesh), Error);
        CHECK_THROWS_AS(zero.validate(), Error);
        StepControl neg = heat;
        neg.cfl = 0.0;
        CHECK_THROWS_AS(dt_1d(neg, mesh.axis_x()), Error);
    }

    TEST_CASE("default cfl")
    {
        CHECK(default_cfl(0) == doctest::Approx(0.1));
        CHECK(default_cfl(1) == doctest::Approx(2.0 / 36.0));
        CHECK(default_cfl(2) == doctest::Approx(2.0 / 148.258));
        for (int k = 1; k <= 8; ++k) {
            CHECK(default_cfl(k) < default_cfl(k - 1));
        }
        CHECK_THROWS_AS(default_cfl(9), Error);
        CHECK_THROWS_AS(default_cfl(-1), Error);
    }

    TEST_CASE("default cfl keeps the diffusion operator stable")
    {
        // power iteration on the periodic heat operator gives its spectral radius
        Coefficients c;
        c.f = [](double) { return 0.0; };
        c.df = c.f;
        c.a = [](double) { return 1.0; };
        c.b = c.a;
        c.g = [](double u) { return u; };
        ProblemSpec p;
        p.coeffs[0] = c;
        for (int k = 0; k <= 4; ++k) {
            const auto mesh = build_uniform_1d(0.0, 1.0, 16);
            DGField1D u(mesh, k);
            for (std::size_t i = 0; i < u.coeffs().size(); ++i) {
                u.coeffs()[i] = std::sin(1.0 + 7.3 * i);
            }
            const FluxConfig cfg = FluxConfig::lax_friedrichs(0.0);
            double rho = 0.0;
            for (int it = 0; it < 400; ++it) {
                auto r = rhs_u_1d(u, p, cfg, {false, k});
                rho = l2_norm(r) / l2_norm(u);
                const double s = 1.0 / l2_norm(r);
                for (auto& v : r.coeffs()) {
                    v *= s;
                }
                u = r;
            }
            const double z = -rho * default_cfl(k) * mesh.h * mesh.h;
            CHECK(std::abs(1 + z + z * z / 2 + z * z * z / 6) <= 1.0);
        }
    }

    TEST_CASE("widen")
    {
        const auto w = widen({0.0, 1.0});
        CHECK(w.lo == doctest::Approx(-0.05));
        CHECK(w.hi == doctest::Approx(1.05));
        const auto p = widen({2.0, 2.0});
        CHECK(p.lo == doctest::Approx(1.9));
        CHECK(p.hi == doctest::Approx(2.1));
    }

    TEST_CASE("bounds from samples")
    {
        StepControl ctrl;
        fill_bounds(ctrl, make_pme_1d(8.0), {0.0, 1.0});
        CHECK(ctrl.b_bound[0] == doctest::Approx(8.0));
        CHECK(ctrl.c_bound[0] == 0.0);
        StepControl bl;
        fill_bounds(bl, make_problem("bl"), {0.0, 1.0});
        CHECK(bl.b_bound[0] == doctest::Approx(0.01));
        CHECK(bl.c_bound[0] == doctest::Approx(2.0).epsilon(1e-2));
    }

    TEST_CASE("SSP-RK3 stability polynomial")
    {
        for (double z : {-0.3, -1.0, 0.2, -2.5}) {
            Scalar u;
            u.c[0] = 1.0;
            const auto out = ssp_rk3_step(u, 0.0, 0.5, [z](const Scalar& v, double, Scalar& r) {
                r.c[0] = (z / 0.5) * v.c[0];
            });
            CHECK(out.c[0] == doctest::Approx(1 + z + z * z / 2 + z * z * z / 6));
        }
        Scalar u;
        u.c[0] = 3.0;
        const auto same = ssp_rk3_step(u, 0.0, 0.1, [](const Scalar&, double, Scalar& r) { r.c[0] = 0.0; });
        CHECK(same.c[0] == 3.0);
        CHECK_THROWS_AS(ssp_rk3_step(u, 0.0, 0.0, [](const Scalar&, double, Scalar&) {}), Error);
    }

    TEST_CASE("third-order accuracy in time")
    {
        // u' = -t u^2 has u = 2 / (2 + t^2) for u(0) = 1
        const auto rhs = [](const Scalar& v, double t, Scalar& r) { r.c[0] = -t * v.c[0] * v.c[0]; };
        double prev = 0.0;
        for (double dt : {0.1, 0.05, 0.025}) {
            Scalar u;
            u.c[0] = 1.0;
            integrate(u, 0.0, 1.0, dt, rhs);
            const double err = std::abs(u.c[0] - 2.0 / 3.0);
            if (prev > 0.0) {
                CHECK(std::log2(prev / err) > 2.8);
            }
            prev = err;
        }
    }

    TEST_CASE("integrate lands on snapshots and t_end")
    {
        Scalar u;
        u.c[0] = 1.0;
        IntegrationObserver<Scalar> obs;
        obs.snapshot_times = {0.0, 0.25, 0.33, 1.0};
        std::vector<double> seen;
        obs.on_snapshot = [&](double t, const Scalar&) { seen.push_back(t); };
        int traces = 0;
        obs.trace_every = 3;
        obs.on_trace = [&](double, const Scalar&) { ++traces; };
        const auto stats = integrate(u, 0.0, 1.0, 0.1, [](const Scalar& v, double, Scalar& r) { r.c[0] = -v.c[0]; },
                                     obs);
        REQUIRE(seen.size() == 4);
        CHECK(seen[1] == doctest::Approx(0.25));
        CHECK(seen[2] == doctest::Approx(0.33));
        CHECK(seen[3] == doctest::Approx(1.0));
        CHECK(stats.t_final == doctest::Approx(1.0));
        CHECK(traces >= 3);
        CHECK(u.c[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-3));

        Scalar v;
        v.c[0] = 2.0;
        const auto none = integrate(v, 0.0, 0.0, 0.1, [](const Scalar&, double, Scalar& r) { r.c[0] = 1.0; });
        CHECK(none.steps == 0);
        CHECK(v.c[0] == 2.0);
    }

    TEST_CASE("non-finite states stop the run")
    {
        Scalar u;
        u.c[0] = 1.0;
        try {
            integrate(u, 0.0, 1.0, 0.5, [](const Scalar& v, double, Scalar& r) { r.c[0] = 1e308 * v.c[0] * 10.0; });
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NonFiniteState);
        }
    }
}
