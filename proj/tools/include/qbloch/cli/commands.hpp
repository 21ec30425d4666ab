#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "qbloch/cli/config.hpp"
#include "qbloch/models.hpp"

namespace qbloch::cli {

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_invalid = 2 };

// --- verify ------------------------------------------------------------------

struct VerifyOptions {
    int max_levels = 3;
    std::uint64_t seed = 42;
    int trials = 10;
};

/// Replaceable right-hand sides, so the harness can be checked against a
/// deliberately broken implementation.
struct VerifyHooks {
    std::function<Matrix(const Matrix& potential, const DensityMatrix& rho, double hbar)>
        liouville = liouville_rhs;
    std::function<ElectronHoleState(const ElectronHoleState&, const TwoSpeciesSystem&, const Vec3c&)>
        electron_hole = eh_rhs;
};

struct VerifyRow {
    std::string check;
    double deviation = 0.0; // max relative deviation over all trials
    std::string coordinate; // location of the worst entry, "(block, i, j)"
    int levels = 0;         // size of the system that produced it
};

inline constexpr double kVerifyTolerance = 1e-10;
inline constexpr int kVerifyMaxLevels = 8;

/// Throws ConfigError for max_levels outside [1, 8] or trials < 1.
std::vector<VerifyRow> run_verification(const VerifyOptions& options, const VerifyHooks& hooks = {});

// --- compare -----------------------------------------------------------------

struct CompareSummary {
    double max_population_discrepancy = 0.0;
    double max_intra_band_coherence = 0.0;
};

/// Full two-species model from zeroed intra-band coherences against the
/// reduced model from matched data, both with RK4. Writes the CSV to `csv`.
CompareSummary run_comparison(const ScenarioConfig& config, std::ostream& csv);

// --- commands ----------------------------------------------------------------

/// Relative paths land in $QBLOCH_OUTPUT_DIR when set, else the working
/// directory. An empty configured path becomes <config stem><suffix>.
std::filesystem::path output_path(const ScenarioConfig& config,
                                  const std::filesystem::path& config_path,
                                  std::string_view default_suffix);

int cmd_simulate(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err,
               const VerifyHooks& hooks = {});
int cmd_compare(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);

/// Command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qbloch::cli
