#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qbloch/fields.hpp"
#include "qbloch/integrators.hpp"
#include "qbloch/system.hpp"

namespace qbloch::cli {

/// Malformed or inconsistent scenario file. The message names the offending
/// field and the violated constraint.
class ConfigError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

struct InitialStateConfig {
    enum class Preset { ground, inverted, diagonal, matrix };

    Preset preset = Preset::ground;
    std::vector<double> populations; // diagonal preset
    Matrix matrix;                   // matrix preset
    /// Degenerate models only: keep coherences between sub-levels of one level.
    bool keep_intra_level_coherence = false;
};

struct OutputConfig {
    std::string path; // empty: derived from the config file name
    int precision = 17;
};

struct ScenarioConfig {
    ModelKind model = ModelKind::one_species;
    std::variant<OneSpeciesSystem, TwoSpeciesSystem> system;
    InitialStateConfig initial_state;
    FieldProfile field;
    StepperSpec stepper;
    OutputConfig output;

    Model to_model() const;

    /// Initial density matrix on the input index set: the expanded sub-level
    /// set for degenerate models, conduction then valence for two species.
    DensityMatrix initial_density() const;

    /// Initial state in the variables the model evolves.
    ModelState initial_state_for_model() const;
};

/// Parses and fully validates a scenario. Throws ConfigError.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Canonical YAML rendering; parse_config(to_yaml(c)) reproduces c.
std::string to_yaml(const ScenarioConfig& config);

std::string_view to_string(InitialStateConfig::Preset preset);

} // namespace qbloch::cli
