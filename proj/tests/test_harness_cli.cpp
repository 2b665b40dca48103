#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ofldg/cli.hpp"
#include "ofldg/error.hpp"
#include "ofldg/harness.hpp"

using namespace ofldg;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

fs::path scratch_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("ofldg_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_SUITE("harness")
{
    TEST_CASE("option validation")
    {
        RunOptions o;
        CHECK_NOTHROW(o.validate());
        o.k = 0;
        CHECK(code_of([&] { o.validate(); }) == ErrorCode::InvalidArgument);
        o.damping = false;
        CHECK_NOTHROW(o.validate());
        o.k = 9;
        CHECK(code_of([&] { o.validate(); }) == ErrorCode::DegreeOutOfRange);
        o = RunOptions{};
        o.cfl = -0.1;
        CHECK_THROWS_AS(o.validate(), Error);
        o = RunOptions{};
        o.convection = ConvectionFlux::UpwindBiased;
        o.theta_upwind = 0.5;
        CHECK_THROWS_AS(o.validate(), Error);
        o = RunOptions{};
        CHECK(o.effective_cfl() == default_cfl(2));
        o.cfl = 0.01;
        CHECK(o.effective_cfl() == 0.01);
    }

    TEST_CASE("empirical orders")
    {
        CHECK(empirical_order(1e-2, 2.5e-3, 10, 20) == doctest::Approx(2.0));
        std::vector<ConvergenceRow> rows(3);
        rows[0].resolution = 10;
        rows[1].resolution = 20;
        rows[2].resolution = 40;
        rows[0].error = {8.0, 8.0, 8.0};
        rows[1].error = {1.0, 2.0, 4.0};
        rows[2].error = {0.125, 0.5, 2.0};
        compute_orders(rows);
        CHECK_FALSE(rows[0].order_l1.has_value());
        CHECK(*rows[2].order_l1 == doctest::Approx(3.0));
        CHECK(*rows[2].order_l2 == doctest::Approx(2.0));
        CHECK(*rows[2].order_linf == doctest::Approx(1.0));
    }

    TEST_CASE("a short run conserves mass and records its trace")
    {
        RunOptions o;
        o.k = 1;
        o.nx = 40;
        o.t_end = 1.01;
        o.trace_every = 5;
        o.snapshot_times = std::vector<double>{1.0, 1.005, 1.01};
        const auto r = run_problem(make_pme_1d(2.0), o);
        CHECK(r.t_final == doctest::Approx(1.01));
        CHECK(r.snapshots.size() == 3);
        REQUIRE(r.trace.size() >= 2);
        CHECK(std::abs(r.trace.back().mass - r.trace.front().mass) < 1e-12);
        CHECK(r.error.has_value());
        CHECK(r.dt > 0.0);
    }

    TEST_CASE("missing exact solution")
    {
        CHECK(code_of([] { run_convergence(make_problem("bl"), RunOptions{}, {10, 20}); }) ==
              ErrorCode::MissingExactSolution);
    }

    TEST_CASE("oscillation metrics")
    {
        const std::vector<CellAverage> avg{{0, 0, 0.0}, {1, 0, 1.2}, {2, 0, -0.1}, {3, 0, 1.0}};
        const auto m = oscillation_metrics(avg, {0.0, 1.0});
        CHECK(m.overshoot == doctest::Approx(0.2));
        CHECK(m.undershoot == doctest::Approx(0.1));
        CHECK(m.total_variation == doctest::Approx(1.2 + 1.3 + 1.1));
        const auto flat = oscillation_metrics(std::vector<CellAverage>{{0, 0, 0.5}, {1, 0, 0.5}}, {0.0, 1.0});
        CHECK(flat.overshoot == 0.0);
        CHECK(flat.undershoot == 0.0);
        // 2x2 grid, i fastest
        const std::vector<CellAverage> grid{{0, 0, 0.0}, {1, 0, 1.0}, {0, 1, 1.0}, {1, 1, 1.0}};
        CHECK(oscillation_metrics(grid, {0.0, 1.0}, 2).total_variation == doctest::Approx(2.0));
    }

    TEST_CASE("difference norms against a nested reference")
    {
        const auto coarse = l2_project([](double x) { return x; }, build_uniform_1d(0, 1, 4), 1);
        const auto fine = l2_project([](double x) { return x; }, build_uniform_1d(0, 1, 16), 1);
        const auto d = difference_norms(coarse, fine);
        CHECK(d.l1 < 1e-14);
        const auto shifted = l2_project([](double x) { return x + 0.5; }, build_uniform_1d(0, 1, 16), 1);
        CHECK(difference_norms(coarse, shifted).l1 == doctest::Approx(0.5));
    }
}

TEST_SUITE("cli")
{
    TEST_CASE("config parsing")
    {
        const auto cfg = cli::parse_config(json{{"problem", "pme1d2"}, {"k", 1}, {"nx", 50}, {"cfl", 0.02}});
        CHECK(cfg.problem == "pme1d2");
        CHECK(cfg.options.k == 1);
        CHECK(cfg.options.nx == 50);
        CHECK(*cfg.options.cfl == 0.02);

        const auto two = cli::parse_config(json{{"problem", "heat2d"}, {"n", 12}, {"space_2d", "Qk"}, {"norm", "domain-mean"}});
        CHECK(two.options.nx == 12);
        CHECK(two.options.ny == 12);
        CHECK(two.options.space == Space::TensorProduct);
        CHECK(two.options.norm_scaling == NormScaling::DomainMean);
        CHECK(two.resolutions == std::vector<int>{10, 20, 40});
        CHECK(cli::parse_config(json{{"problem", "twobox"}}).resolutions == std::vector<int>{40, 80, 160, 320});
    }

    TEST_CASE("config errors name the key")
    {
        const auto message = [](const json& doc) {
            try {
                cli::parse_config(doc);
            } catch (const Error& e) {
                return std::string(e.what());
            }
            return std::string();
        };
        CHECK(message(json{{"problem", "pme1d2"}, {"bogus", 1}}).find("bogus") != std::string::npos);
        CHECK(message(json{{"problem", "pme1d2"}, {"k", "two"}}).find("'k'") != std::string::npos);
        CHECK(message(json{{"k", 1}}).find("problem") != std::string::npos);
        CHECK(code_of([] { cli::parse_config(json{{"problem", "pme1d2"}, {"convection_flux", "roe"}}); }) ==
              ErrorCode::ConfigParse);
        CHECK(code_of([] { cli::parse_config(json{{"problem", "nope"}}); }) == ErrorCode::InvalidArgument);
        CHECK(code_of([] { cli::parse_config(json{{"problem", "pme1d2"}, {"k", 0}}); }) == ErrorCode::InvalidArgument);
        CHECK(cli::exit_code_for(Error(ErrorCode::ConfigParse, "x")) == 2);
        CHECK(cli::exit_code_for(Error(ErrorCode::NonFiniteState, "x")) == 3);
    }

    TEST_CASE("overrides")
    {
        json doc{{"problem", "pme1d2"}};
        cli::apply_override(doc, "k=3");
        cli::apply_override(doc, "convection_flux=upwind");
        cli::apply_override(doc, "snapshot_times=[1.0,1.5]");
        CHECK(doc["k"] == 3);
        CHECK(doc["convection_flux"] == "upwind");
        CHECK(doc["snapshot_times"].size() == 2);
        CHECK_THROWS_AS(cli::apply_override(doc, "novalue"), Error);
        CHECK_THROWS_AS(cli::apply_override(doc, "nokey=1"), Error);
    }

    TEST_CASE("file names")
    {
        CHECK(cli::snapshot_file_name("twobox", 240, 0, 1, 0.5) == "twobox_240_0.5.csv");
        CHECK(cli::snapshot_file_name("pme2d", 80, 80, 2, 4.0) == "pme2d_80x80_4.csv");
    }

    TEST_CASE("run writes deterministic artifacts")
    {
        const auto dir = scratch_dir("run");
        json doc{{"problem", "twobox"}, {"k", 1}, {"nx", 24}, {"t_end", 0.01}, {"trace_every", 10},
                 {"snapshot_times", {0.0, 0.01}}, {"output_dir", dir.string()}};
        std::ostringstream log;
        const auto files = cli::cmd_run(cli::parse_config(doc), log);
        CHECK(files.size() >= 4);
        const auto first = slurp(dir / "twobox_24_0.01.csv");
        CHECK(first.rfind("x,u_mean\n", 0) == 0);
        const auto manifest = json::parse(slurp(dir / "twobox_24_manifest.json"));
        CHECK(manifest["command"] == "run");
        CHECK(manifest["parameters"]["k"] == 1);
        CHECK(manifest["parameters"]["cfl_from_default"] == true);
        CHECK(fs::exists(dir / "twobox_24_trace.csv"));

        cli::cmd_run(cli::parse_config(doc), log);
        CHECK(slurp(dir / "twobox_24_0.01.csv") == first);
        fs::remove_all(dir);
    }

    TEST_CASE("convergence and compare artifacts")
    {
        const auto dir = scratch_dir("conv");
        std::ostringstream log;
        json doc{{"problem", "pme1d-accuracy"}, {"k", 1}, {"resolutions", {20, 40}}, {"output_dir", dir.string()}};
        cli::cmd_convergence(cli::parse_config(doc), log);
        const auto csv = slurp(dir / "pme1d-accuracy_k1_convergence.csv");
        CHECK(csv.rfind("resolution,L1,order_L1,L2,order_L2,Linf,order_Linf\n", 0) == 0);
        const auto report = json::parse(slurp(dir / "pme1d-accuracy_k1_convergence.json"));
        CHECK(report.is_object());

        json cmp{{"problem", "sd1d"}, {"k", 1}, {"nx", 40}, {"t_end", 0.05}, {"output_dir", dir.string()}};
        cli::cmd_compare(cli::parse_config(cmp), log);
        const auto summary = json::parse(slurp(dir / "sd1d_40_compare.json"));
        CHECK(summary.contains("overshoot_damped"));
        CHECK(summary.contains("overshoot_undamped"));
        CHECK(fs::exists(dir / "sd1d_40_damped.csv"));
        CHECK(fs::exists(dir / "sd1d_40_undamped.csv"));

        std::ostringstream list;
        cli::cmd_list_problems(list);
        CHECK(list.str().find("heat2d") != std::string::npos);
        fs::remove_all(dir);
    }
}
