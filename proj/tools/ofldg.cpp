#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ofldg/cli.hpp"

namespace {

ofldg::cli::RunConfig load(const std::string& path, const std::vector<std::string>& overrides,
                           const std::string& output_dir)
{
    auto doc = ofldg::cli::load_config(path);
    for (const auto& o : overrides) {
        ofldg::cli::apply_override(doc, o);
    }
    if (!output_dir.empty()) {
        doc["output_dir"] = output_dir;
    }
    return ofldg::cli::parse_config(doc);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Oscillation-free LDG solver for degenerate parabolic equations"};
    app.require_subcommand(1);

    std::string config;
    std::vector<std::string> overrides;
    std::string output_dir;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
        sub->add_option("--set", overrides, "Override a config key, key=value (repeatable)");
        sub->add_option("-o,--output-dir", output_dir, "Directory for artifacts (overrides output_dir)");
    };
    auto* run = app.add_subcommand("run", "Run one simulation and write snapshots, trace and manifest");
    auto* conv = app.add_subcommand("convergence", "Run a resolution ladder against the exact solution");
    auto* cmp = app.add_subcommand("compare", "Run with and without damping and compare oscillation metrics");
    auto* list = app.add_subcommand("list-problems", "Print the registered problem names");
    add_common(run);
    add_common(conv);
    add_common(cmp);

    CLI11_PARSE(app, argc, argv);

    try {
        ofldg::cli::configure_threads();
        if (list->parsed()) {
            ofldg::cli::cmd_list_problems(std::cout);
            return 0;
        }
        const auto cfg = load(config, overrides, output_dir);
        if (run->parsed()) {
            ofldg::cli::cmd_run(cfg, std::cout);
        } else if (conv->parsed()) {
            ofldg::cli::cmd_convergence(cfg, std::cout);
        } else if (cmp->parsed()) {
            ofldg::cli::cmd_compare(cfg, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ofldg::cli::exit_code_for(e);
    }
    return 0;
}
