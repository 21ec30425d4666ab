#include "qbloch/cli/csv.hpp"

#include <cstdio>

namespace qbloch::cli {

namespace {

std::string entry(const std::string& prefix, Eigen::Index i, Eigen::Index j)
{
    return prefix + "_" + std::to_string(i) + "_" + std::to_string(j);
}

// Populations first, then the upper-triangle coherences, as Re/Im pairs.
template <class Visit>
void hermitian_entries(Eigen::Index n, Visit&& visit)
{
    for (Eigen::Index i = 0; i < n; ++i)
        visit(i, i);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            visit(i, j);
}

template <class Visit>
void all_entries(Eigen::Index rows, Eigen::Index cols, Visit&& visit)
{
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            visit(i, j);
}

void complex_columns(std::vector<std::string>& out, const std::string& name)
{
    out.push_back(name + "_re");
    out.push_back(name + "_im");
}

bool has_degeneracy_column(const Model& model)
{
    return model.kind == ModelKind::degenerate_fdb || model.kind == ModelKind::degenerate_cdb;
}

// Appends the state values in the order of trajectory_columns.
void state_values(std::vector<double>& out, const ModelState& state)
{
    const auto push = [&](cplx z) {
        out.push_back(z.real());
        out.push_back(z.imag());
    };
    if (const auto* rho = std::get_if<DensityMatrix>(&state)) {
        hermitian_entries(rho->rows(), [&](Eigen::Index i, Eigen::Index j) { push((*rho)(i, j)); });
    } else if (const auto* eh = std::get_if<ElectronHoleState>(&state)) {
        hermitian_entries(eh->rho_c.rows(), [&](Eigen::Index i, Eigen::Index j) { push(eh->rho_c(i, j)); });
        hermitian_entries(eh->rho_h.rows(), [&](Eigen::Index i, Eigen::Index j) { push(eh->rho_h(i, j)); });
        all_entries(eh->rho_ch.rows(), eh->rho_ch.cols(),
                    [&](Eigen::Index i, Eigen::Index j) { push(eh->rho_ch(i, j)); });
    } else {
        const auto& gh = std::get<GhState>(state);
        for (Eigen::Index i = 0; i < gh.n_e.size(); ++i)
            out.push_back(gh.n_e(i));
        for (Eigen::Index j = 0; j < gh.n_h.size(); ++j)
            out.push_back(gh.n_h(j));
        all_entries(gh.p.rows(), gh.p.cols(), [&](Eigen::Index j, Eigen::Index i) { push(gh.p(j, i)); });
    }
}

} // namespace

std::string format_number(double value, int precision)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    return buf;
}

std::vector<std::string> trajectory_columns(const Model& model, const ModelState& sample)
{
    std::vector<std::string> cols{"t"};
    if (const auto* rho = std::get_if<DensityMatrix>(&sample)) {
        hermitian_entries(rho->rows(), [&](Eigen::Index i, Eigen::Index j) {
            complex_columns(cols, entry("rho", i, j));
        });
    } else if (const auto* eh = std::get_if<ElectronHoleState>(&sample)) {
        hermitian_entries(eh->rho_c.rows(), [&](Eigen::Index i, Eigen::Index j) {
            complex_columns(cols, entry("rho_c", i, j));
        });
        hermitian_entries(eh->rho_h.rows(), [&](Eigen::Index i, Eigen::Index j) {
            complex_columns(cols, entry("rho_h", i, j));
        });
        all_entries(eh->rho_ch.rows(), eh->rho_ch.cols(), [&](Eigen::Index i, Eigen::Index j) {
            complex_columns(cols, entry("rho_ch", i, j));
        });
    } else {
        const auto& gh = std::get<GhState>(sample);
        for (Eigen::Index i = 0; i < gh.n_e.size(); ++i)
            cols.push_back("n_e_" + std::to_string(i));
        for (Eigen::Index j = 0; j < gh.n_h.size(); ++j)
            cols.push_back("n_h_" + std::to_string(j));
        all_entries(gh.p.rows(), gh.p.cols(), [&](Eigen::Index j, Eigen::Index i) {
            complex_columns(cols, entry("p", j, i));
        });
    }
    for (const char* name : {"hermiticity_defect", "trace_re", "trace_im", "min_eigenvalue",
                             "coherence_bound_defect"})
        cols.emplace_back(name);
    if (has_degeneracy_column(model))
        cols.emplace_back("degeneracy_bound_defect");
    return cols;
}

void write_trajectory_csv(std::ostream& out, const Model& model, const Trajectory& traj,
                          int precision)
{
    if (traj.size() == 0)
        return;
    const auto cols = trajectory_columns(model, traj.states.front());
    for (std::size_t c = 0; c < cols.size(); ++c)
        out << (c ? "," : "") << cols[c];
    out << '\n';

    std::vector<double> row;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        row.clear();
        row.push_back(traj.times[k]);
        state_values(row, traj.states[k]);
        const DiagnosticsRecord& d = traj.diagnostics[k];
        row.insert(row.end(), {d.hermiticity_defect, d.trace.real(), d.trace.imag(), d.min_eigenvalue,
                               d.coherence_bound_defect});
        if (has_degeneracy_column(model))
            row.push_back(d.degeneracy_bound_defect.value_or(0.0));
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << format_number(row[c], precision);
        out << '\n';
    }
}

} // namespace qbloch::cli
