#include "qbloch/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "qbloch/linalg.hpp"
#include "qbloch/models.hpp"

namespace qbloch {

DiagnosticsRecord audit(const Matrix& state, const std::optional<DegeneracyContext>& context)
{
    if (state.rows() != state.cols())
        throw DimensionError("audit: state is not square");
    DiagnosticsRecord r;
    const Eigen::Index n = state.rows();
    if (n == 0)
        return r;

    r.hermiticity_defect = hermiticity_defect(state);
    r.trace = state.trace();
    r.min_eigenvalue = hermitian_eig(hermitian_part(state)).eigenvalues(0);

    const RealVector pops = state.diagonal().real();
    r.population_min = pops.minCoeff();
    r.population_max = pops.maxCoeff();

    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j)
                continue;
            const double bound = std::sqrt(std::max(pops(i), 0.0) * std::max(pops(j), 0.0));
            r.coherence_bound_defect =
                std::max(r.coherence_bound_defect, std::abs(state(i, j)) - bound);
        }
    }

    if (context) {
        const auto& d = context->degeneracies;
        double defect = 0.0;
        if (context->layout == DegeneracyContext::Layout::expanded) {
            const Matrix summed = summed_blocks(state, d);
            for (Eigen::Index i = 0; i < summed.rows(); ++i)
                defect = std::max(defect, summed(i, i).real() - d[static_cast<std::size_t>(i)]);
        } else {
            if (static_cast<Eigen::Index>(d.size()) != n)
                throw DimensionError("audit: condensed state size does not match degeneracies");
            for (Eigen::Index i = 0; i < n; ++i) {
                const double di = d[static_cast<std::size_t>(i)];
                defect = std::max(defect, di * pops(i) - di);
            }
        }
        r.degeneracy_bound_defect = defect;
    }
    return r;
}

} // namespace qbloch
