#include "fock_space.hpp"

#include <algorithm>
#include <cmath>

namespace qbloch::testing {

using algebra::Species;
using algebra::Statistics;

FockSpace::FockSpace(Statistics stats, int conduction_modes, int valence_modes, int max_occupation)
    : stats_(stats), conduction_modes_(conduction_modes), valence_modes_(valence_modes),
      max_occupation_(stats == Statistics::fermion ? 1 : max_occupation)
{
    dimension_ = 1;
    for (int m = 0; m < modes(); ++m)
        dimension_ *= (max_occupation_ + 1);
}

int FockSpace::mode_of(const algebra::OperatorFactor& f) const
{
    return f.species == Species::conduction ? f.level : conduction_modes_ + f.level;
}

std::vector<int> FockSpace::occupations(Eigen::Index index) const
{
    std::vector<int> occ(static_cast<std::size_t>(modes()));
    for (int m = 0; m < modes(); ++m) {
        occ[static_cast<std::size_t>(m)] = static_cast<int>(index % (max_occupation_ + 1));
        index /= (max_occupation_ + 1);
    }
    return occ;
}

Matrix FockSpace::annihilator(int mode) const
{
    Matrix a = Matrix::Zero(dimension_, dimension_);
    Eigen::Index stride = 1;
    for (int m = 0; m < mode; ++m)
        stride *= (max_occupation_ + 1);
    const int species_start = mode < conduction_modes_ ? 0 : conduction_modes_;

    for (Eigen::Index col = 0; col < dimension_; ++col) {
        const auto occ = occupations(col);
        const int n = occ[static_cast<std::size_t>(mode)];
        if (n == 0)
            continue;
        double amplitude = std::sqrt(static_cast<double>(n));
        if (stats_ == Statistics::fermion) {
            int below = 0;
            for (int m = species_start; m < mode; ++m)
                below += occ[static_cast<std::size_t>(m)];
            amplitude = (below % 2 == 0) ? 1.0 : -1.0;
        }
        a(col - stride, col) = amplitude;
    }
    return a;
}

Matrix FockSpace::factor_matrix(const algebra::OperatorFactor& f) const
{
    const Matrix a = annihilator(mode_of(f));
    return f.dagger ? Matrix(a.adjoint()) : a;
}

Matrix FockSpace::evaluate(const algebra::OperatorExpr& expr) const
{
    Matrix out = Matrix::Zero(dimension_, dimension_);
    for (const auto& [factors, c] : expr.terms()) {
        Matrix prod = Matrix::Identity(dimension_, dimension_);
        for (const auto& f : factors)
            prod = prod * factor_matrix(f);
        out += c * prod;
    }
    return out;
}

bool FockSpace::exact_column(Eigen::Index index, const algebra::OperatorExpr& expr) const
{
    if (stats_ == Statistics::fermion)
        return true;
    const auto occ = occupations(index);
    for (const auto& [factors, c] : expr.terms()) {
        std::vector<int> creators(static_cast<std::size_t>(modes()), 0);
        for (const auto& f : factors)
            if (f.dagger)
                ++creators[static_cast<std::size_t>(mode_of(f))];
        for (int m = 0; m < modes(); ++m) {
            const auto k = static_cast<std::size_t>(m);
            if (occ[k] + creators[k] > max_occupation_)
                return false;
        }
    }
    return true;
}

} // namespace qbloch::testing
