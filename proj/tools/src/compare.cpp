#include <algorithm>

#include "qbloch/cli/commands.hpp"
#include "qbloch/cli/csv.hpp"

namespace qbloch::cli {

namespace {

double max_off_diagonal(const Matrix& m)
{
    double worst = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j)
                worst = std::max(worst, std::abs(m(i, j)));
    return worst;
}

DensityMatrix without_intra_band_coherences(DensityMatrix rho, BandSplit split)
{
    for (Eigen::Index i = 0; i < rho.rows(); ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j) {
            const bool same_band = (i < split.conduction) == (j < split.conduction);
            if (same_band && i != j)
                rho(i, j) = 0.0;
        }
    return rho;
}

} // namespace

CompareSummary run_comparison(const ScenarioConfig& config, std::ostream& csv)
{
    const auto* sys = std::get_if<TwoSpeciesSystem>(&config.system);
    if (!sys)
        throw ConfigError("compare: model must be two_species, electron_hole or gehrig_hess");
    const BandSplit split = split_of(*sys);
    const DensityMatrix rho0 = without_intra_band_coherences(config.initial_density(), split);

    StepperSpec spec = config.stepper;
    spec.method = Method::rk4;
    const Trajectory full = simulate({ModelKind::two_species, *sys}, rho0, config.field, spec);
    const Trajectory reduced = simulate({ModelKind::gehrig_hess, *sys},
                                        to_gh(to_electron_hole(rho0, split)), config.field, spec);

    const int precision = config.output.precision;
    csv << "t";
    for (Eigen::Index i = 0; i < split.conduction; ++i)
        csv << ",dn_e_" << i;
    for (Eigen::Index j = 0; j < split.valence; ++j)
        csv << ",dn_h_" << j;
    csv << ",max_population_discrepancy,max_intra_band_coherence\n";

    CompareSummary summary;
    for (std::size_t k = 0; k < full.size(); ++k) {
        const ElectronHoleState eh = to_electron_hole(full.matrix(k), split);
        const GhState& gh = reduced.gh(k);
        double row_max = 0.0;
        csv << format_number(full.times[k], precision);
        for (Eigen::Index i = 0; i < split.conduction; ++i) {
            const double d = eh.rho_c(i, i).real() - gh.n_e(i);
            row_max = std::max(row_max, std::abs(d));
            csv << ',' << format_number(d, precision);
        }
        for (Eigen::Index j = 0; j < split.valence; ++j) {
            const double d = eh.rho_h(j, j).real() - gh.n_h(j);
            row_max = std::max(row_max, std::abs(d));
            csv << ',' << format_number(d, precision);
        }
        const double coherence = std::max(max_off_diagonal(eh.rho_c), max_off_diagonal(eh.rho_h));
        csv << ',' << format_number(row_max, precision) << ',' << format_number(coherence, precision)
            << '\n';
        summary.max_population_discrepancy = std::max(summary.max_population_discrepancy, row_max);
        summary.max_intra_band_coherence = std::max(summary.max_intra_band_coherence, coherence);
    }
    return summary;
}

} // namespace qbloch::cli
