#include "qbloch/cli/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "qbloch/models.hpp"

namespace qbloch::cli {

namespace {

using Preset = InitialStateConfig::Preset;

constexpr std::array<std::pair<Preset, std::string_view>, 4> kPresetNames{{
    {Preset::ground, "ground"},
    {Preset::inverted, "inverted"},
    {Preset::diagonal, "diagonal"},
    {Preset::matrix, "matrix"},
}};

bool is_one_species_kind(ModelKind kind)
{
    return kind == ModelKind::one_species || kind == ModelKind::degenerate_fdb ||
           kind == ModelKind::degenerate_cdb;
}

std::string indexed(const std::string& where, std::size_t k)
{
    return where + "[" + std::to_string(k) + "]";
}

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw ConfigError(where + ": " + what);
}

void check_keys(const YAML::Node& node, const std::string& where,
                std::initializer_list<std::string_view> allowed)
{
    if (!node.IsMap())
        fail(where, "expected a mapping");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            fail(where, "unknown key '" + key + "'");
    }
}

double read_real(const YAML::Node& node, const std::string& where)
{
    if (!node.IsScalar())
        fail(where, "expected a real number");
    double value = 0.0;
    try {
        value = node.as<double>();
    } catch (const YAML::BadConversion&) {
        fail(where, "expected a real number, got '" + node.Scalar() + "'");
    }
    if (!std::isfinite(value))
        fail(where, "must be finite");
    return value;
}

double read_real(const YAML::Node& parent, const char* key, const std::string& where, double fallback)
{
    const YAML::Node node = parent[key];
    return node ? read_real(node, where + "." + key) : fallback;
}

double require_real(const YAML::Node& parent, const char* key, const std::string& where)
{
    const YAML::Node node = parent[key];
    if (!node)
        fail(where + "." + key, "is required");
    return read_real(node, where + "." + key);
}

long long read_integer(const YAML::Node& node, const std::string& where)
{
    if (!node.IsScalar())
        fail(where, "expected an integer");
    try {
        return node.as<long long>();
    } catch (const YAML::BadConversion&) {
        fail(where, "expected an integer, got '" + node.Scalar() + "'");
    }
}

cplx read_complex(const YAML::Node& node, const std::string& where)
{
    if (node.IsScalar())
        return read_real(node, where);
    if (!node.IsSequence() || node.size() != 2)
        fail(where, "expected a complex number written as [re, im] or a real number");
    return {read_real(node[0], where + ".re"), read_real(node[1], where + ".im")};
}

Vec3c read_vec3(const YAML::Node& node, const std::string& where)
{
    if (node.IsScalar()) {
        if (read_real(node, where) != 0.0)
            fail(where, "a scalar 3-vector may only be 0; write three complex components");
        return {};
    }
    if (!node.IsSequence() || node.size() != 3)
        fail(where, "expected a 3-vector of complex components");
    Vec3c v{};
    for (std::size_t a = 0; a < 3; ++a)
        v[a] = read_complex(node[a], indexed(where, a));
    return v;
}

RealVector read_real_list(const YAML::Node& node, const std::string& where)
{
    if (!node.IsSequence())
        fail(where, "expected a list of real numbers");
    RealVector v(static_cast<Eigen::Index>(node.size()));
    for (std::size_t k = 0; k < node.size(); ++k)
        v(static_cast<Eigen::Index>(k)) = read_real(node[k], indexed(where, k));
    return v;
}

DipoleMatrix read_dipole(const YAML::Node& node, const std::string& where, Eigen::Index rows,
                         Eigen::Index cols)
{
    DipoleMatrix m(rows, cols);
    if (!node)
        return m;
    if (!node.IsSequence() || static_cast<Eigen::Index>(node.size()) != rows)
        fail(where, "expected " + std::to_string(rows) + " rows");
    for (Eigen::Index k = 0; k < rows; ++k) {
        const YAML::Node row = node[static_cast<std::size_t>(k)];
        const std::string rw = indexed(where, static_cast<std::size_t>(k));
        if (!row.IsSequence() || static_cast<Eigen::Index>(row.size()) != cols)
            fail(rw, "expected " + std::to_string(cols) + " entries");
        for (Eigen::Index l = 0; l < cols; ++l)
            m.set(k, l, read_vec3(row[static_cast<std::size_t>(l)], indexed(rw, static_cast<std::size_t>(l))));
    }
    return m;
}

Matrix read_complex_matrix(const YAML::Node& node, const std::string& where)
{
    if (!node.IsSequence() || node.size() == 0)
        fail(where, "expected a non-empty list of rows");
    const auto n = static_cast<Eigen::Index>(node.size());
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const YAML::Node row = node[static_cast<std::size_t>(i)];
        const std::string rw = indexed(where, static_cast<std::size_t>(i));
        if (!row.IsSequence() || static_cast<Eigen::Index>(row.size()) != n)
            fail(rw, "expected " + std::to_string(n) + " entries (square matrix)");
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = read_complex(row[static_cast<std::size_t>(j)], indexed(rw, static_cast<std::size_t>(j)));
    }
    return m;
}

OneSpeciesSystem read_one_species(const YAML::Node& node)
{
    check_keys(node, "system", {"hbar", "energies", "degeneracies", "dipole"});
    OneSpeciesSystem s;
    s.hbar = read_real(node, "hbar", "system", 1.0);
    if (!node["energies"])
        fail("system.energies", "is required");
    s.energies = read_real_list(node["energies"], "system.energies");
    const Eigen::Index n = s.levels();
    if (const YAML::Node d = node["degeneracies"]) {
        if (!d.IsSequence())
            fail("system.degeneracies", "expected a list of positive integers");
        for (std::size_t k = 0; k < d.size(); ++k) {
            const long long v = read_integer(d[k], indexed("system.degeneracies", k));
            if (v < 1 || v > 64)
                fail(indexed("system.degeneracies", k), "must be an integer in [1, 64]");
            s.degeneracies.push_back(static_cast<int>(v));
        }
    } else {
        s.degeneracies.assign(static_cast<std::size_t>(n), 1);
    }
    s.dipole = read_dipole(node["dipole"], "system.dipole", n, n);
    return s;
}

TwoSpeciesSystem read_two_species(const YAML::Node& node)
{
    check_keys(node, "system",
               {"hbar", "conduction_energies", "valence_energies", "dipole_cc", "dipole_vv", "dipole_cv"});
    TwoSpeciesSystem s;
    s.hbar = read_real(node, "hbar", "system", 1.0);
    for (const char* key : {"conduction_energies", "valence_energies"})
        if (!node[key])
            fail(std::string("system.") + key, "is required");
    s.conduction_energies = read_real_list(node["conduction_energies"], "system.conduction_energies");
    s.valence_energies = read_real_list(node["valence_energies"], "system.valence_energies");
    const Eigen::Index nc = s.conduction_levels();
    const Eigen::Index nv = s.valence_levels();
    s.dipole_cc = read_dipole(node["dipole_cc"], "system.dipole_cc", nc, nc);
    s.dipole_vv = read_dipole(node["dipole_vv"], "system.dipole_vv", nv, nv);
    s.dipole_cv = read_dipole(node["dipole_cv"], "system.dipole_cv", nc, nv);
    return s;
}

Envelope read_envelope(const YAML::Node& node, const std::string& where)
{
    if (!node)
        return ConstantEnvelope{};
    if (!node.IsMap() || !node["type"])
        fail(where, "expected a mapping with a 'type' key");
    const auto type = node["type"].as<std::string>();
    if (type == "constant") {
        check_keys(node, where, {"type"});
        return ConstantEnvelope{};
    }
    if (type == "gaussian") {
        check_keys(node, where, {"type", "center", "width"});
        const GaussianEnvelope g{require_real(node, "center", where), require_real(node, "width", where)};
        if (!(g.width > 0.0))
            fail(where + ".width", "must be > 0");
        return g;
    }
    if (type == "rectangular") {
        check_keys(node, where, {"type", "start", "stop"});
        const RectangularEnvelope r{require_real(node, "start", where), require_real(node, "stop", where)};
        if (!(r.start < r.stop))
            fail(where, "start must be less than stop");
        return r;
    }
    fail(where + ".type", "must be one of constant, gaussian, rectangular (got '" + type + "')");
}

FieldProfile read_field(const YAML::Node& node)
{
    FieldProfile field;
    if (!node || node.IsNull())
        return field;
    if (!node.IsSequence())
        fail("field", "expected a list of pulses");
    for (std::size_t k = 0; k < node.size(); ++k) {
        const YAML::Node p = node[k];
        const std::string where = indexed("field", k);
        check_keys(p, where, {"amplitude", "carrier_frequency", "phase", "envelope"});
        if (!p["amplitude"])
            fail(where + ".amplitude", "is required");
        Pulse pulse;
        pulse.amplitude = read_vec3(p["amplitude"], where + ".amplitude");
        pulse.carrier_frequency = read_real(p, "carrier_frequency", where, 0.0);
        pulse.phase = read_real(p, "phase", where, 0.0);
        pulse.envelope = read_envelope(p["envelope"], where + ".envelope");
        field.add(pulse);
    }
    return field;
}

StepperSpec read_stepper(const YAML::Node& node)
{
    if (!node)
        fail("stepper", "is required");
    check_keys(node, "stepper", {"method", "dt", "t_start", "t_end", "record_every"});
    StepperSpec s;
    if (const YAML::Node m = node["method"]) {
        const auto name = m.as<std::string>();
        const auto method = parse_method(name);
        if (!method)
            fail("stepper.method", "must be unitary_midpoint or rk4 (got '" + name + "')");
        s.method = *method;
    }
    s.dt = require_real(node, "dt", "stepper");
    s.t_start = read_real(node, "t_start", "stepper", 0.0);
    s.t_end = require_real(node, "t_end", "stepper");
    if (const YAML::Node r = node["record_every"]) {
        const long long v = read_integer(r, "stepper.record_every");
        if (v < 1 || v > 1'000'000'000)
            fail("stepper.record_every", "must be a positive integer");
        s.record_every = static_cast<int>(v);
    }
    try {
        s.validate();
    } catch (const ValidationError& e) {
        throw ConfigError(e.what());
    }
    return s;
}

InitialStateConfig read_initial_state(const YAML::Node& node)
{
    InitialStateConfig init;
    if (!node)
        return init;
    check_keys(node, "initial_state", {"preset", "populations", "matrix", "keep_intra_level_coherence"});
    if (const YAML::Node p = node["preset"]) {
        const auto name = p.as<std::string>();
        const auto it = std::find_if(kPresetNames.begin(), kPresetNames.end(),
                                     [&](const auto& e) { return e.second == name; });
        if (it == kPresetNames.end())
            fail("initial_state.preset", "must be one of ground, inverted, diagonal, matrix (got '" + name + "')");
        init.preset = it->first;
    }
    if (init.preset == Preset::diagonal) {
        if (!node["populations"])
            fail("initial_state.populations", "is required for the diagonal preset");
        const RealVector p = read_real_list(node["populations"], "initial_state.populations");
        init.populations.assign(p.data(), p.data() + p.size());
    } else if (node["populations"]) {
        fail("initial_state.populations", "only allowed with the diagonal preset");
    }
    if (init.preset == Preset::matrix) {
        if (!node["matrix"])
            fail("initial_state.matrix", "is required for the matrix preset");
        init.matrix = read_complex_matrix(node["matrix"], "initial_state.matrix");
    } else if (node["matrix"]) {
        fail("initial_state.matrix", "only allowed with the matrix preset");
    }
    if (const YAML::Node k = node["keep_intra_level_coherence"]) {
        try {
            init.keep_intra_level_coherence = k.as<bool>();
        } catch (const YAML::BadConversion&) {
            fail("initial_state.keep_intra_level_coherence", "expected true or false");
        }
    }
    return init;
}

OutputConfig read_output(const YAML::Node& node)
{
    OutputConfig out;
    if (!node)
        return out;
    check_keys(node, "output", {"path", "precision"});
    if (const YAML::Node p = node["path"])
        out.path = p.as<std::string>();
    if (const YAML::Node p = node["precision"]) {
        const long long v = read_integer(p, "output.precision");
        if (v < 1 || v > 17)
            fail("output.precision", "must be an integer in [1, 17]");
        out.precision = static_cast<int>(v);
    }
    return out;
}

// --- emitting ----------------------------------------------------------------

void emit_complex(YAML::Emitter& e, cplx z)
{
    e << YAML::Flow << YAML::BeginSeq << z.real() << z.imag() << YAML::EndSeq;
}

void emit_vec3(YAML::Emitter& e, const Vec3c& v)
{
    if (v == Vec3c{}) {
        e << 0;
        return;
    }
    e << YAML::Flow << YAML::BeginSeq;
    for (const cplx& z : v)
        emit_complex(e, z);
    e << YAML::EndSeq;
}

void emit_real_list(YAML::Emitter& e, const RealVector& v)
{
    e << YAML::Flow << YAML::BeginSeq;
    for (Eigen::Index k = 0; k < v.size(); ++k)
        e << v(k);
    e << YAML::EndSeq;
}

void emit_dipole(YAML::Emitter& e, const char* key, const DipoleMatrix& m)
{
    e << YAML::Key << key << YAML::Value << YAML::BeginSeq;
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
        e << YAML::Flow << YAML::BeginSeq;
        for (Eigen::Index l = 0; l < m.cols(); ++l)
            emit_vec3(e, m.at(k, l));
        e << YAML::EndSeq;
    }
    e << YAML::EndSeq;
}

void emit_system(YAML::Emitter& e, const ScenarioConfig& c)
{
    e << YAML::Key << "system" << YAML::Value << YAML::BeginMap;
    if (const auto* s = std::get_if<OneSpeciesSystem>(&c.system)) {
        e << YAML::Key << "hbar" << YAML::Value << s->hbar;
        e << YAML::Key << "energies" << YAML::Value;
        emit_real_list(e, s->energies);
        e << YAML::Key << "degeneracies" << YAML::Value << YAML::Flow << s->degeneracies;
        emit_dipole(e, "dipole", s->dipole);
    } else {
        const auto& t = std::get<TwoSpeciesSystem>(c.system);
        e << YAML::Key << "hbar" << YAML::Value << t.hbar;
        e << YAML::Key << "conduction_energies" << YAML::Value;
        emit_real_list(e, t.conduction_energies);
        e << YAML::Key << "valence_energies" << YAML::Value;
        emit_real_list(e, t.valence_energies);
        emit_dipole(e, "dipole_cc", t.dipole_cc);
        emit_dipole(e, "dipole_vv", t.dipole_vv);
        emit_dipole(e, "dipole_cv", t.dipole_cv);
    }
    e << YAML::EndMap;
}

void emit_envelope(YAML::Emitter& e, const Envelope& env)
{
    e << YAML::Flow << YAML::BeginMap;
    if (const auto* g = std::get_if<GaussianEnvelope>(&env)) {
        e << YAML::Key << "type" << YAML::Value << "gaussian";
        e << YAML::Key << "center" << YAML::Value << g->center;
        e << YAML::Key << "width" << YAML::Value << g->width;
    } else if (const auto* r = std::get_if<RectangularEnvelope>(&env)) {
        e << YAML::Key << "type" << YAML::Value << "rectangular";
        e << YAML::Key << "start" << YAML::Value << r->start;
        e << YAML::Key << "stop" << YAML::Value << r->stop;
    } else {
        e << YAML::Key << "type" << YAML::Value << "constant";
    }
    e << YAML::EndMap;
}

} // namespace

std::string_view to_string(InitialStateConfig::Preset preset)
{
    for (const auto& [value, name] : kPresetNames)
        if (value == preset)
            return name;
    return "?";
}

Model ScenarioConfig::to_model() const
{
    return {model, system};
}

DensityMatrix ScenarioConfig::initial_density() const
{
    Eigen::Index n = 0;
    RealVector energies;
    const auto* one = std::get_if<OneSpeciesSystem>(&system);
    if (one) {
        const OneSpeciesSystem expanded = expand_degenerate(*one);
        n = expanded.levels();
        energies = expanded.energies;
    } else {
        n = std::get<TwoSpeciesSystem>(system).total_levels();
    }

    DensityMatrix rho = DensityMatrix::Zero(n, n);
    switch (initial_state.preset) {
    case Preset::ground:
    case Preset::inverted: {
        const bool ground = initial_state.preset == Preset::ground;
        if (one) {
            Eigen::Index k = 0;
            if (ground)
                energies.minCoeff(&k);
            else
                energies.maxCoeff(&k);
            rho(k, k) = 1.0;
        } else {
            const auto split = split_of(std::get<TwoSpeciesSystem>(system));
            if (ground)
                rho.bottomRightCorner(split.valence, split.valence).setIdentity();
            else
                rho.topLeftCorner(split.conduction, split.conduction).setIdentity();
        }
        break;
    }
    case Preset::diagonal:
        if (static_cast<Eigen::Index>(initial_state.populations.size()) != n)
            fail("initial_state.populations", "expected " + std::to_string(n) + " entries");
        for (Eigen::Index k = 0; k < n; ++k)
            rho(k, k) = initial_state.populations[static_cast<std::size_t>(k)];
        break;
    case Preset::matrix:
        if (initial_state.matrix.rows() != n)
            fail("initial_state.matrix", "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
        rho = initial_state.matrix;
        break;
    }

    try {
        validate_density(rho, "initial_state");
    } catch (const ValidationError& e) {
        throw ConfigError(e.what());
    }
    if (one && one->is_degenerate() && !initial_state.keep_intra_level_coherence)
        rho = zero_intra_level_coherences(rho, one->degeneracies);
    return rho;
}

ModelState ScenarioConfig::initial_state_for_model() const
{
    const DensityMatrix rho = initial_density();
    switch (model) {
    case ModelKind::degenerate_cdb:
        return condense(rho, std::get<OneSpeciesSystem>(system).degeneracies);
    case ModelKind::electron_hole:
        return to_electron_hole(rho, split_of(std::get<TwoSpeciesSystem>(system)));
    case ModelKind::gehrig_hess:
        return to_gh(to_electron_hole(rho, split_of(std::get<TwoSpeciesSystem>(system))));
    default:
        return rho;
    }
}

ScenarioConfig parse_config(std::string_view text)
{
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config is not valid YAML: ") + e.what());
    }
    if (!root.IsMap())
        throw ConfigError("config: expected a mapping at the top level");
    check_keys(root, "config", {"model", "system", "initial_state", "field", "stepper", "output"});

    ScenarioConfig c;
    try {
        if (!root["model"])
            fail("model", "is required");
        const auto name = root["model"].as<std::string>();
        const auto kind = parse_model_kind(name);
        if (!kind)
            fail("model", "unknown model '" + name +
                              "' (one_species, degenerate_fdb, degenerate_cdb, two_species, "
                              "electron_hole, gehrig_hess)");
        c.model = *kind;

        if (!root["system"])
            fail("system", "is required");
        if (is_one_species_kind(c.model))
            c.system = read_one_species(root["system"]);
        else
            c.system = read_two_species(root["system"]);
        try {
            std::visit([](const auto& s) { s.validate(); }, c.system);
            c.to_model().validate();
        } catch (const ValidationError& e) {
            throw ConfigError(std::string("system: ") + e.what());
        }

        c.initial_state = read_initial_state(root["initial_state"]);
        c.field = read_field(root["field"]);
        c.stepper = read_stepper(root["stepper"]);
        c.output = read_output(root["output"]);
        if (c.stepper.method == Method::unitary_midpoint && !is_liouville(c.model))
            fail("stepper.method", "unitary_midpoint requires a Liouville-form model; model " +
                                       std::string(to_string(c.model)) + " must use rk4");
        (void)c.initial_state_for_model();
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string to_yaml(const ScenarioConfig& c)
{
    YAML::Emitter e;
    e.SetDoublePrecision(17);
    e << YAML::BeginMap;
    e << YAML::Key << "model" << YAML::Value << std::string(to_string(c.model));
    emit_system(e, c);

    e << YAML::Key << "initial_state" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "preset" << YAML::Value << std::string(to_string(c.initial_state.preset));
    if (c.initial_state.preset == Preset::diagonal)
        e << YAML::Key << "populations" << YAML::Value << YAML::Flow << c.initial_state.populations;
    if (c.initial_state.preset == Preset::matrix) {
        e << YAML::Key << "matrix" << YAML::Value << YAML::BeginSeq;
        for (Eigen::Index i = 0; i < c.initial_state.matrix.rows(); ++i) {
            e << YAML::Flow << YAML::BeginSeq;
            for (Eigen::Index j = 0; j < c.initial_state.matrix.cols(); ++j)
                emit_complex(e, c.initial_state.matrix(i, j));
            e << YAML::EndSeq;
        }
        e << YAML::EndSeq;
    }
    e << YAML::Key << "keep_intra_level_coherence" << YAML::Value
      << c.initial_state.keep_intra_level_coherence;
    e << YAML::EndMap;

    e << YAML::Key << "field" << YAML::Value << YAML::BeginSeq;
    for (const Pulse& p : c.field.pulses()) {
        e << YAML::BeginMap;
        e << YAML::Key << "amplitude" << YAML::Value;
        emit_vec3(e, p.amplitude);
        e << YAML::Key << "carrier_frequency" << YAML::Value << p.carrier_frequency;
        e << YAML::Key << "phase" << YAML::Value << p.phase;
        e << YAML::Key << "envelope" << YAML::Value;
        emit_envelope(e, p.envelope);
        e << YAML::EndMap;
    }
    e << YAML::EndSeq;

    e << YAML::Key << "stepper" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "method" << YAML::Value << std::string(to_string(c.stepper.method));
    e << YAML::Key << "dt" << YAML::Value << c.stepper.dt;
    e << YAML::Key << "t_start" << YAML::Value << c.stepper.t_start;
    e << YAML::Key << "t_end" << YAML::Value << c.stepper.t_end;
    e << YAML::Key << "record_every" << YAML::Value << c.stepper.record_every;
    e << YAML::EndMap;

    e << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
    if (!c.output.path.empty())
        e << YAML::Key << "path" << YAML::Value << c.output.path;
    e << YAML::Key << "precision" << YAML::Value << c.output.precision;
    e << YAML::EndMap;

    e << YAML::EndMap;
    if (!e.good())
        throw Error(std::string("to_yaml: ") + e.GetLastError());
    return std::string(e.c_str()) + "\n";
}

} // namespace qbloch::cli
