#include "qbloch/cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>

#include <CLI11.hpp>

#include "qbloch/cli/csv.hpp"

namespace qbloch::cli {

namespace {

std::ofstream open_output(const std::filesystem::path& path)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write output file '" + path.string() + "'");
    return out;
}

// Runs `body`, mapping exceptions to exit codes and messages on `err`.
template <class Body>
int guarded(std::ostream& err, Body&& body)
{
    try {
        return body();
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

} // namespace

std::filesystem::path output_path(const ScenarioConfig& config,
                                  const std::filesystem::path& config_path,
                                  std::string_view default_suffix)
{
    std::filesystem::path p = config.output.path;
    if (p.empty())
        p = config_path.stem().string() + std::string(default_suffix);
    if (p.is_relative())
        if (const char* dir = std::getenv("QBLOCH_OUTPUT_DIR"); dir && *dir)
            p = std::filesystem::path(dir) / p;
    return p;
}

int cmd_simulate(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const ScenarioConfig config = load_config(config_path);
        const Model model = config.to_model();
        const Trajectory traj =
            simulate(model, config.initial_state_for_model(), config.field, config.stepper);
        const auto path = output_path(config, config_path, ".csv");
        std::ofstream csv = open_output(path);
        write_trajectory_csv(csv, model, traj, config.output.precision);
        csv.close();
        if (!csv)
            throw Error("failed writing '" + path.string() + "'");
        out << "wrote " << traj.size() << " records to " << path.string() << '\n';
        return int{exit_ok};
    });
}

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err,
               const VerifyHooks& hooks)
{
    return guarded(err, [&] {
        const auto rows = run_verification(options, hooks);
        out << std::left << std::setw(40) << "check" << std::setw(8) << "levels" << std::setw(26)
            << "max relative deviation"
            << "worst entry\n";
        bool ok = true;
        for (const auto& r : rows) {
            const bool pass = r.deviation < kVerifyTolerance;
            ok = ok && pass;
            out << std::left << std::setw(40) << r.check << std::setw(8) << r.levels << std::setw(26)
                << format_number(r.deviation, 3) << r.coordinate << (pass ? "" : "  MISMATCH") << '\n';
        }
        for (const auto& r : rows)
            if (r.deviation >= kVerifyTolerance)
                err << "mismatch: " << r.check << " at " << r.coordinate << " (deviation "
                    << format_number(r.deviation, 3) << ", tolerance " << kVerifyTolerance << ")\n";
        out << (ok ? "all checks passed" : "verification failed") << '\n';
        return ok ? int{exit_ok} : int{exit_failure};
    });
}

int cmd_compare(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const ScenarioConfig config = load_config(config_path);
        const auto path = output_path(config, config_path, "_compare.csv");
        std::ofstream csv = open_output(path);
        const CompareSummary s = run_comparison(config, csv);
        csv.close();
        if (!csv)
            throw Error("failed writing '" + path.string() + "'");
        out << "max population discrepancy: " << format_number(s.max_population_discrepancy, 6) << '\n'
            << "max intra-band coherence: " << format_number(s.max_intra_band_coherence, 6) << '\n'
            << "wrote " << path.string() << '\n';
        return int{exit_ok};
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Density-matrix Bloch equation simulator"};
    app.name("qbloch");
    app.require_subcommand(1, 1);

    std::string sim_config;
    auto* sim = app.add_subcommand("simulate", "Run a scenario and write a CSV trajectory");
    sim->add_option("config", sim_config, "Scenario file (YAML)")->required();

    VerifyOptions verify;
    auto* ver = app.add_subcommand("verify", "Check hand-coded equations against the operator algebra");
    ver->add_option("--levels", verify.max_levels, "Largest system size (at most 8)");
    ver->add_option("--seed", verify.seed, "Random seed");
    ver->add_option("--trials", verify.trials, "Number of random systems");

    std::string cmp_config;
    auto* cmp = app.add_subcommand("compare", "Compare the full two-species model with the reduced model");
    cmp->add_option("config", cmp_config, "Scenario file (YAML)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? int{exit_ok} : int{exit_invalid};
    }

    if (sim->parsed())
        return cmd_simulate(sim_config, out, err);
    if (ver->parsed())
        return cmd_verify(verify, out, err);
    return cmd_compare(cmp_config, out, err);
}

} // namespace qbloch::cli
