#include "qbloch/integrators.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

namespace qbloch {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 2> kMethodNames{{
    {Method::unitary_midpoint, "unitary_midpoint"},
    {Method::rk4, "rk4"},
}};

constexpr std::array<std::pair<ModelKind, std::string_view>, 6> kModelNames{{
    {ModelKind::one_species, "one_species"},
    {ModelKind::degenerate_fdb, "degenerate_fdb"},
    {ModelKind::degenerate_cdb, "degenerate_cdb"},
    {ModelKind::two_species, "two_species"},
    {ModelKind::electron_hole, "electron_hole"},
    {ModelKind::gehrig_hess, "gehrig_hess"},
}};

bool is_one_species(ModelKind kind)
{
    return kind == ModelKind::one_species || kind == ModelKind::degenerate_fdb ||
           kind == ModelKind::degenerate_cdb;
}

} // namespace

std::string_view to_string(Method m)
{
    for (const auto& [value, name] : kMethodNames)
        if (value == m)
            return name;
    return "?";
}

std::string_view to_string(ModelKind k)
{
    for (const auto& [value, name] : kModelNames)
        if (value == k)
            return name;
    return "?";
}

std::optional<Method> parse_method(std::string_view s)
{
    for (const auto& [value, name] : kMethodNames)
        if (name == s)
            return value;
    return std::nullopt;
}

std::optional<ModelKind> parse_model_kind(std::string_view s)
{
    for (const auto& [value, name] : kModelNames)
        if (name == s)
            return value;
    return std::nullopt;
}

bool is_liouville(ModelKind kind)
{
    return kind != ModelKind::electron_hole && kind != ModelKind::gehrig_hess;
}

void StepperSpec::validate() const
{
    if (!(t_end > t_start))
        throw ValidationError("stepper: t_end must be greater than t_start");
    if (!(dt > 0.0) || dt > (t_end - t_start))
        throw ValidationError("stepper: dt must satisfy 0 < dt <= t_end - t_start");
    if (record_every < 1)
        throw ValidationError("stepper: record_every must be >= 1");
}

double Model::hbar() const
{
    return std::visit([](const auto& s) { return s.hbar; }, system);
}

void Model::validate() const
{
    if (is_one_species(kind) != std::holds_alternative<OneSpeciesSystem>(system))
        throw ValidationError(std::string("model ") + std::string(to_string(kind)) +
                              (is_one_species(kind) ? " needs a one-species system"
                                                    : " needs a two-species system"));
    std::visit([](const auto& s) { s.validate(); }, system);
    if (kind == ModelKind::one_species && one_species().is_degenerate())
        throw ValidationError("model one_species requires all degeneracies equal to 1; use "
                              "degenerate_fdb or degenerate_cdb");
}

// --- stepping --------------------------------------------------------------

DensityMatrix step_unitary(const DensityMatrix& rho, const Matrix& v_mid, double dt, double hbar)
{
    if (rho.rows() != v_mid.rows() || rho.cols() != v_mid.cols())
        throw DimensionError("step_unitary: potential and state dimensions differ");
    const Matrix u = unitary_propagator(v_mid, dt, hbar);
    return hermitian_part(u * rho * u.adjoint());
}

Matrix model_potential(const Model& model, const Vec3c& field)
{
    switch (model.kind) {
    case ModelKind::one_species:
        return potential_one_species(model.one_species(), field);
    case ModelKind::degenerate_fdb:
        return potential_one_species(expand_degenerate(model.one_species()), field);
    case ModelKind::degenerate_cdb:
        return potential_one_species(condensed_system(model.one_species()), field);
    case ModelKind::two_species:
        return potential_two_species(model.two_species(), field);
    default:
        throw std::invalid_argument(std::string("model ") + std::string(to_string(model.kind)) +
                                    " has no Liouville potential");
    }
}

namespace {

// Derived systems, computed once per simulation.
struct PreparedModel {
    const Model& model;
    OneSpeciesSystem evolved_one; // expanded or condensed where relevant

    explicit PreparedModel(const Model& m) : model(m)
    {
        if (m.kind == ModelKind::degenerate_fdb)
            evolved_one = expand_degenerate(m.one_species());
        else if (m.kind == ModelKind::degenerate_cdb)
            evolved_one = condensed_system(m.one_species());
        else if (m.kind == ModelKind::one_species)
            evolved_one = m.one_species();
    }

    Matrix potential(const Vec3c& field) const
    {
        if (is_one_species(model.kind))
            return potential_one_species(evolved_one, field);
        return potential_two_species(model.two_species(), field);
    }

    Eigen::Index liouville_dimension() const
    {
        if (is_one_species(model.kind))
            return evolved_one.levels();
        return model.two_species().total_levels();
    }
};

std::optional<DegeneracyContext> degeneracy_context(const Model& model)
{
    if (model.kind == ModelKind::degenerate_fdb)
        return DegeneracyContext{model.one_species().degeneracies,
                                 DegeneracyContext::Layout::expanded};
    if (model.kind == ModelKind::degenerate_cdb)
        return DegeneracyContext{model.one_species().degeneracies,
                                 DegeneracyContext::Layout::condensed};
    return std::nullopt;
}

void check_state_shape(const PreparedModel& prepared, const ModelState& state)
{
    const Model& model = prepared.model;
    std::ostringstream os;
    if (is_liouville(model.kind)) {
        const auto* rho = std::get_if<DensityMatrix>(&state);
        const Eigen::Index n = prepared.liouville_dimension();
        if (!rho || rho->rows() != n || rho->cols() != n) {
            os << "initial state for model " << to_string(model.kind) << " must be a " << n << "x"
               << n << " density matrix";
            throw DimensionError(os.str());
        }
        return;
    }
    const auto& sys = model.two_species();
    const Eigen::Index nc = sys.conduction_levels();
    const Eigen::Index nh = sys.valence_levels();
    if (model.kind == ModelKind::electron_hole) {
        const auto* s = std::get_if<ElectronHoleState>(&state);
        if (!s || s->rho_c.rows() != nc || s->rho_c.cols() != nc || s->rho_h.rows() != nh ||
            s->rho_h.cols() != nh || s->rho_ch.rows() != nc || s->rho_ch.cols() != nh)
            throw DimensionError("initial state for model electron_hole has the wrong shape");
        return;
    }
    const auto* s = std::get_if<GhState>(&state);
    if (!s || s->n_e.size() != nc || s->n_h.size() != nh || s->p.rows() != nh || s->p.cols() != nc)
        throw DimensionError("initial state for model gehrig_hess has the wrong shape");
}

template <class State, class Step>
Trajectory march(const Model& model, const State& initial, const StepperSpec& spec, Step&& step)
{
    const double span = spec.t_end - spec.t_start;
    const auto full_steps = static_cast<long long>(std::floor(span / spec.dt + 1e-9));
    const double remainder = span - static_cast<double>(full_steps) * spec.dt;
    const bool partial = remainder > 1e-9 * spec.dt;
    const long long total = full_steps + (partial ? 1 : 0);

    Trajectory traj;
    const auto record = [&](double t, const State& s) {
        traj.times.push_back(t);
        traj.states.emplace_back(s);
        traj.diagnostics.push_back(audit_state(model, traj.states.back()));
    };

    State y = initial;
    record(spec.t_start, y);
    for (long long k = 0; k < total; ++k) {
        const double t = spec.t_start + static_cast<double>(k) * spec.dt;
        const double h = (k < full_steps) ? spec.dt : remainder;
        y = step(y, t, h);
        const bool last = (k + 1 == total);
        if (last || (k + 1) % spec.record_every == 0)
            record(last ? spec.t_end : t + h, y);
    }
    return traj;
}

} // namespace

ModelState model_rhs(const Model& model, const ModelState& state, const Vec3c& field)
{
    switch (model.kind) {
    case ModelKind::electron_hole:
        return eh_rhs(std::get<ElectronHoleState>(state), model.two_species(), field);
    case ModelKind::gehrig_hess:
        return gh_rhs(std::get<GhState>(state), model.two_species(), field);
    default:
        return liouville_rhs(model_potential(model, field), std::get<DensityMatrix>(state),
                             model.hbar());
    }
}

DensityMatrix as_density_matrix(const ModelState& state)
{
    if (const auto* rho = std::get_if<DensityMatrix>(&state))
        return *rho;
    if (const auto* eh = std::get_if<ElectronHoleState>(&state))
        return from_electron_hole(*eh);
    return from_electron_hole(from_gh(std::get<GhState>(state)));
}

DiagnosticsRecord audit_state(const Model& model, const ModelState& state)
{
    return audit(as_density_matrix(state), degeneracy_context(model));
}

Trajectory simulate(const Model& model, const ModelState& initial, const FieldProfile& field,
                    const StepperSpec& spec)
{
    model.validate();
    spec.validate();
    if (spec.method == Method::unitary_midpoint && !is_liouville(model.kind))
        throw ValidationError("method unitary_midpoint requires a Liouville-form model; model " +
                              std::string(to_string(model.kind)) + " must use rk4");

    const PreparedModel prepared(model);
    check_state_shape(prepared, initial);
    const double hbar = model.hbar();

    if (is_liouville(model.kind)) {
        const auto& rho0 = std::get<DensityMatrix>(initial);
        if (spec.method == Method::unitary_midpoint) {
            return march(model, rho0, spec, [&](const DensityMatrix& rho, double t, double h) {
                return step_unitary(rho, prepared.potential(field(t + 0.5 * h)), h, hbar);
            });
        }
        const auto rhs = [&](double t, const DensityMatrix& rho) -> DensityMatrix {
            return liouville_rhs(prepared.potential(field(t)), rho, hbar);
        };
        return march(model, rho0, spec, [&](const DensityMatrix& rho, double t, double h) {
            return step_rk4(rhs, rho, t, h);
        });
    }

    const auto& sys = model.two_species();
    if (model.kind == ModelKind::electron_hole) {
        const auto rhs = [&](double t, const ElectronHoleState& s) { return eh_rhs(s, sys, field(t)); };
        return march(model, std::get<ElectronHoleState>(initial), spec,
                     [&](const ElectronHoleState& s, double t, double h) {
                         return step_rk4(rhs, s, t, h);
                     });
    }
    const auto rhs = [&](double t, const GhState& s) { return gh_rhs(s, sys, field(t)); };
    return march(model, std::get<GhState>(initial), spec,
                 [&](const GhState& s, double t, double h) { return step_rk4(rhs, s, t, h); });
}

} // namespace qbloch
