#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracle.hpp"
#include "ofldg/field.hpp"
#include "ofldg/problems.hpp"

using namespace ofldg;

TEST_SUITE("field")
{
    TEST_CASE("projection reproduces polynomials")
    {
        const auto mesh = build_uniform_1d(-1.0, 3.0, 2);
        const auto u = l2_project([](double x) { return x; }, mesh, 1);
        for (double x : {-0.9, -0.2, 0.4, 0.8, 2.5}) {
            CHECK(u(x) == doctest::Approx(x));
        }
        // x^2 on the reference cell [-1, 1]
        const auto sq = l2_project([](double x) { return x * x; }, mesh, 1);
        CHECK(sq.cell(0)[0] / std::sqrt(2.0) == doctest::Approx(1.0 / 3.0));
        CHECK(sq.cell(0)[1] == doctest::Approx(0.0).scale(1.0));
    }

    TEST_CASE("projection of the Barenblatt profile")
    {
        // the front cell dominates: u behaves like dist^(1/7) there
        const auto exact = [](double x) { return barenblatt(x, 1.0, 8.0); };
        const double e320 = norms(l2_project(exact, build_uniform_1d(-6.0, 6.0, 320), 2), exact).l1;
        const double e640 = norms(l2_project(exact, build_uniform_1d(-6.0, 6.0, 640), 2), exact).l1;
        CHECK(e320 < 5e-3);
        CHECK(e640 < e320);
    }

    TEST_CASE("modal truncation")
    {
        const std::vector<double> c{0.7};
        CHECK(modal_truncate(c, 0) == c);
        const std::vector<double> three{1.0, 2.0, 3.0};
        CHECK(modal_truncate(three, 1) == std::vector<double>{1.0, 2.0, 0.0});
        const std::vector<double> two{1.0, 2.0};
        CHECK(modal_truncate(two, -1) == modal_truncate(two, 0));
        CHECK(modal_truncate(two, -1) == std::vector<double>{1.0, 0.0});
    }

    TEST_CASE("truncation equals quadrature projection")
    {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (int k = 0; k <= 6; ++k) {
            for (int trial = 0; trial < 10; ++trial) {
                std::vector<double> c(k + 1);
                for (auto& v : c) {
                    v = dist(rng);
                }
                for (int target = -1; target <= k; ++target) {
                    const auto a = modal_truncate(c, target);
                    const auto b = oracle::quadrature_truncate(c, target);
                    for (int m = 0; m <= k; ++m) {
                        CHECK(std::abs(a[m] - b[m]) < 1e-12);
                    }
                }
            }
        }
    }

    TEST_CASE("2d truncation keeps modes by space degree")
    {
        const ModeSet pk(2, Space::TotalDegree);
        const ModeSet qk(2, Space::TensorProduct);
        CHECK(pk.size() == 6);
        CHECK(qk.size() == 9);
        CHECK(pk[0] == std::array<int, 2>{0, 0});
        std::vector<double> c(qk.size(), 1.0);
        const auto t = modal_truncate(c, 1, qk);
        for (int m = 0; m < qk.size(); ++m) {
            CHECK(t[m] == (std::max(qk[m][0], qk[m][1]) <= 1 ? 1.0 : 0.0));
        }
        std::vector<double> d(pk.size(), 1.0);
        const auto s = modal_truncate(d, 1, pk);
        for (int m = 0; m < pk.size(); ++m) {
            CHECK(s[m] == (pk[m][0] + pk[m][1] <= 1 ? 1.0 : 0.0));
        }
    }

    TEST_CASE("traces, jumps and averages")
    {
        const auto mesh = build_uniform_1d(0.0, 1.0, 2);
        DGField1D u(mesh, 1);
        u.cell(1)[0] = std::sqrt(2.0);
        CHECK(jump(u, 1, 0, BoundaryKind::periodic()) == doctest::Approx(1.0));
        CHECK(average(u, 1, BoundaryKind::periodic()) == doctest::Approx(0.5));
        CHECK(jump(u, 0, 0, BoundaryKind::periodic()) == doctest::Approx(-1.0));
        CHECK(trace(u, 0, Side::Left, BoundaryKind::dirichlet(3.0, 0.0)) == doctest::Approx(3.0));
        CHECK(trace(u, 2, Side::Right, BoundaryKind::dirichlet(3.0, 4.0)) == doctest::Approx(4.0));

        DGField1D c(mesh, 2);
        c.cell(0)[0] = c.cell(1)[0] = 2.0 * std::sqrt(2.0);
        for (int f = 0; f <= 2; ++f) {
            CHECK(jump(c, f, 0, BoundaryKind::periodic()) == doctest::Approx(0.0).scale(1.0));
            CHECK(average(c, f, BoundaryKind::periodic()) == doctest::Approx(2.0));
        }
    }

    TEST_CASE("jumps agree with the oracle, including ghost derivatives")
    {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        const auto mesh = build_uniform_1d(-1.0, 2.0, 6);
        DGField1D u(mesh, 3);
        for (auto& v : u.coeffs()) {
            v = dist(rng);
        }
        for (const auto& bc : {BoundaryKind::periodic(), BoundaryKind::dirichlet(0.3, -0.4)}) {
            for (int f = 0; f <= 6; ++f) {
                for (int d = 0; d <= 3; ++d) {
                    const double ref = oracle::jump_1d(u, f, d, bc);
                    CHECK(jump(u, f, d, bc) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
                }
            }
        }
    }

    TEST_CASE("jumps of a smooth projection decay like h^(k+1)")
    {
        double prev = 0.0;
        for (int n : {10, 20, 40}) {
            const auto mesh = build_uniform_1d(0.0, 2 * std::numbers::pi, n);
            const auto u = l2_project([](double x) { return std::sin(x); }, mesh, 1);
            double worst = 0.0;
            for (int f = 0; f <= n; ++f) {
                worst = std::max(worst, std::abs(jump(u, f, 0, BoundaryKind::periodic())));
            }
            if (prev > 0.0) {
                CHECK(std::log2(prev / worst) > 1.8);
            }
            prev = worst;
        }
    }

    TEST_CASE("norms")
    {
        const auto mesh = build_uniform_1d(0.0, 2 * std::numbers::pi, 16);
        const DGField1D zero(mesh, 2);
        const auto s = norms(zero, [](double x) { return std::sin(x); });
        CHECK(s.l2 == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-6));
        CHECK(s.l1 == doctest::Approx(4.0).epsilon(1e-3));

        const auto u = l2_project([](double x) { return 1.0 + x; }, mesh, 1);
        const auto e = norms(u, [](double x) { return 1.0 + x; });
        CHECK(e.l1 < 1e-14);
        CHECK(e.l2 < 1e-14);
        CHECK(e.linf < 1e-13);
    }

    TEST_CASE("windowed norms integrate the overlap only")
    {
        const auto mesh = build_uniform_1d(0.0, 1.0, 3);
        DGField1D u(mesh, 0);
        for (int j = 0; j < 3; ++j) {
            u.cell(j)[0] = std::sqrt(2.0);
        }
        const auto n = norms(u, Function1D{}, 0.1, 0.6);
        CHECK(n.l1 == doctest::Approx(0.5));
        CHECK(n.l2 == doctest::Approx(std::sqrt(0.5)));
        const auto m = scale_norms(n, NormScaling::DomainMean, 0.5);
        CHECK(m.l1 == doctest::Approx(1.0));
        CHECK(m.l2 == doctest::Approx(1.0));
        CHECK(m.linf == n.linf);
    }

    TEST_CASE("windowed P2 projection error of the m = 8 profile")
    {
        const auto mesh = build_uniform_1d(-6.0, 6.0, 40);
        const auto exact = [](double x) { return barenblatt(x, 1.0, 8.0); };
        const auto u = l2_project(exact, mesh, 2, 20);
        const double l2 = norms(u, exact, -1.5, 1.5).l2;
        CHECK(l2 < 3.0 * 1.027e-6);
        CHECK(l2 > 1.027e-6 / 3.0);
    }

    TEST_CASE("cell averages and csv")
    {
        const auto mesh = build_uniform_1d(0.0, 1.0, 2);
        const auto u = l2_project([](double x) { return x; }, mesh, 1);
        const auto avg = cell_averages(u);
        REQUIRE(avg.size() == 2);
        CHECK(avg[0].mean == doctest::Approx(0.25));
        CHECK(avg[1].mean == doctest::Approx(0.75));
        CHECK(avg[0].x == doctest::Approx(0.25));

        const auto flat = l2_project([](double) { return 1.5; }, build_uniform_1d(0, 1, 5), 3);
        for (const auto& a : cell_averages(flat)) {
            CHECK(a.mean == doctest::Approx(1.5));
        }

        std::ostringstream os;
        write_cell_averages_csv(os, avg, 1);
        CHECK(os.str().rfind("x,u_mean\n", 0) == 0);
        std::ostringstream os2;
        write_cell_averages_csv(os2, {{0.5, 0.25, 1.0}}, 2);
        CHECK(os2.str().rfind("x,y,u_mean\n", 0) == 0);
    }

    TEST_CASE("two-box averages take the box values away from the edges")
    {
        const auto p = make_two_box();
        const auto mesh = build_uniform_1d(-6.0, 6.0, 240);
        const auto u = l2_project([&](double x) { return p.initial(x, 0.0); }, mesh, 2);
        int cut = 0;
        for (const auto& a : cell_averages(u)) {
            const bool clean = std::abs(a.mean) < 1e-12 || std::abs(a.mean - 1.0) < 1e-12 ||
                               std::abs(a.mean - 1.5) < 1e-12;
            cut += clean ? 0 : 1;
        }
        CHECK(cut <= 4);
    }

    TEST_CASE("mass and L2 norm in 2d")
    {
        const auto mesh = build_uniform_2d(0, 2, 0, 1, 4, 3);
        const auto u = l2_project([](double x, double y) { return x + 2 * y; }, mesh, 1);
        CHECK(mass(u) == doctest::Approx(2.0 + 2.0));
        const auto one = l2_project([](double, double) { return 3.0; }, mesh, 2, Space::TensorProduct);
        CHECK(l2_norm(one) == doctest::Approx(3.0 * std::sqrt(2.0)));
        CHECK(one(1.3, 0.2) == doctest::Approx(3.0));
        CHECK(norms(one, [](double, double) { return 3.0; }).l2 < 1e-13);
    }
}
