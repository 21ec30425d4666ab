#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "qbloch/diagnostics.hpp"
#include "qbloch/fields.hpp"
#include "qbloch/linalg.hpp"
#include "qbloch/models.hpp"

namespace qbloch {

enum class Method : std::uint8_t { unitary_midpoint, rk4 };

enum class ModelKind : std::uint8_t {
    one_species,
    degenerate_fdb,
    degenerate_cdb,
    two_species,
    electron_hole,
    gehrig_hess,
};

std::string_view to_string(Method m);
std::string_view to_string(ModelKind k);
std::optional<Method> parse_method(std::string_view s);
std::optional<ModelKind> parse_model_kind(std::string_view s);

/// True for models whose dynamics is i hbar d/dt rho = [V, rho].
bool is_liouville(ModelKind kind);

struct StepperSpec {
    Method method = Method::unitary_midpoint;
    double dt = 1e-2;
    double t_start = 0.0;
    double t_end = 1.0;
    int record_every = 1;

    /// t_end > t_start, 0 < dt <= t_end - t_start, record_every >= 1.
    void validate() const;
};

/**
 * Problem description for the simulator. Degenerate kinds carry the
 * original degenerate system: degenerate_fdb evolves the expanded system,
 * degenerate_cdb the condensed one.
 */
struct Model {
    ModelKind kind = ModelKind::one_species;
    std::variant<OneSpeciesSystem, TwoSpeciesSystem> system;

    const OneSpeciesSystem& one_species() const { return std::get<OneSpeciesSystem>(system); }
    const TwoSpeciesSystem& two_species() const { return std::get<TwoSpeciesSystem>(system); }
    double hbar() const;

    /// Throws ValidationError if the system variant does not fit the kind.
    void validate() const;
};

using ModelState = std::variant<DensityMatrix, ElectronHoleState, GhState>;

struct Trajectory {
    std::vector<double> times;
    std::vector<ModelState> states;
    std::vector<DiagnosticsRecord> diagnostics;

    std::size_t size() const { return times.size(); }
    const DensityMatrix& matrix(std::size_t k) const { return std::get<DensityMatrix>(states[k]); }
    const ElectronHoleState& electron_hole(std::size_t k) const
    {
        return std::get<ElectronHoleState>(states[k]);
    }
    const GhState& gh(std::size_t k) const { return std::get<GhState>(states[k]); }
};

/// One midpoint-exponential step: rho <- U rho U^dagger with
/// U = exp(-i dt V_mid / hbar). The result is re-Hermitized.
DensityMatrix step_unitary(const DensityMatrix& rho, const Matrix& v_mid, double dt, double hbar);

/// Classical fourth-order Runge-Kutta step. `rhs(t, y)` returns dy/dt; the
/// state type needs `+=` and `double * State`.
template <class State, class Rhs>
State step_rk4(Rhs&& rhs, const State& y, double t, double dt)
{
    const double h2 = 0.5 * dt;
    const State k1 = rhs(t, y);
    State y2 = y;
    y2 += h2 * k1;
    const State k2 = rhs(t + h2, y2);
    State y3 = y;
    y3 += h2 * k2;
    const State k3 = rhs(t + h2, y3);
    State y4 = y;
    y4 += dt * k3;
    const State k4 = rhs(t + dt, y4);

    State out = y;
    out += (dt / 6.0) * k1;
    out += (dt / 3.0) * k2;
    out += (dt / 3.0) * k3;
    out += (dt / 6.0) * k4;
    return out;
}

/// Hamiltonian-like potential of a Liouville model at a given field value,
/// on the index set the model evolves (expanded for FDB, condensed for CDB).
Matrix model_potential(const Model& model, const Vec3c& field);

/// Time derivative of a state under the model.
ModelState model_rhs(const Model& model, const ModelState& state, const Vec3c& field);

/// Full density matrix the state corresponds to (rho^tot for electron-hole
/// and reduced states).
DensityMatrix as_density_matrix(const ModelState& state);

DiagnosticsRecord audit_state(const Model& model, const ModelState& state);

/// Fixed-step march from t_start to t_end. Records the initial state, every
/// `record_every` steps, and the final state. A final partial step covers a
/// span that is not a multiple of dt.
Trajectory simulate(const Model& model, const ModelState& initial, const FieldProfile& field,
                    const StepperSpec& spec);

} // namespace qbloch
