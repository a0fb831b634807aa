#include <CLI11.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "sdfsim/cli_io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"SDF cooperative emitter-localization simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> base_seed;
    int n_seeds = 0;

    auto* run = app.add_subcommand("run", "run one simulation and emit CSV series");
    run->add_option("--scenario", scenario_path, "scenario file")->required();
    run->add_option("--seed", seed, "seed override (default: scenario's seed)");
    run->add_option("--out", out_dir, "output directory")->required();

    auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over consecutive seeds");
    sweep->add_option("--scenario", scenario_path, "scenario file")->required();
    sweep->add_option("--seeds", n_seeds, "number of seeds")->required();
    sweep->add_option("--base-seed", base_seed, "first seed (default: scenario's seed)");
    sweep->add_option("--out", out_dir, "output directory")->required();

    auto* validate = app.add_subcommand("validate", "parse and check a scenario");
    validate->add_option("--scenario", scenario_path, "scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : sdfsim::kExitInputError;
    }

    if (run->parsed()) return sdfsim::cmd_run(scenario_path, seed, out_dir);
    if (sweep->parsed()) return sdfsim::cmd_sweep(scenario_path, n_seeds, base_seed, out_dir);
    return sdfsim::cmd_validate(scenario_path);
}
