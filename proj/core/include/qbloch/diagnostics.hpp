#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qbloch/types.hpp"

namespace qbloch {

/// How a state relates to degenerate levels, for the rho^{++}_ii <= d_i check.
struct DegeneracyContext {
    enum class Layout { expanded, condensed };

    std::vector<int> degeneracies;
    /// expanded: state lives on the sub-level set (size sum d_i).
    /// condensed: state is sigma, so rho^{++}_ii = d_i sigma_ii.
    Layout layout = Layout::expanded;
};

struct DiagnosticsRecord {
    double hermiticity_defect = 0.0;
    cplx trace{0.0, 0.0};
    double min_eigenvalue = 0.0;
    double coherence_bound_defect = 0.0;
    double population_min = 0.0;
    double population_max = 0.0;
    std::optional<double> degeneracy_bound_defect;
};

/// Measures Hermiticity, trace, spectrum, Cauchy-Schwarz coherence bound,
/// population range and, with a context, the degenerate-level bound.
/// Throws DimensionError for non-square input.
DiagnosticsRecord audit(const Matrix& state,
                        const std::optional<DegeneracyContext>& context = std::nullopt);

} // namespace qbloch
