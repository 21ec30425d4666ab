#include "qbloch/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace qbloch::algebra {

// --- OperatorExpr ------------------------------------------------------------

OperatorExpr OperatorExpr::scalar(Statistics stats, cplx value)
{
    return monomial(stats, value, {});
}

OperatorExpr OperatorExpr::factor(Statistics stats, const OperatorFactor& f)
{
    return monomial(stats, cplx(1.0), {f});
}

OperatorExpr OperatorExpr::monomial(Statistics stats, cplx coefficient, FactorString factors)
{
    OperatorExpr out(stats);
    out.add_term(coefficient, factors);
    return out;
}

cplx OperatorExpr::coefficient(const FactorString& factors) const
{
    const auto it = terms_.find(factors);
    return it == terms_.end() ? cplx(0.0) : it->second;
}

void OperatorExpr::add_term(cplx c, const FactorString& factors)
{
    if (c == cplx(0.0))
        return;
    auto [it, inserted] = terms_.try_emplace(factors, c);
    if (!inserted)
        it->second += c;
    if (std::abs(it->second) < kPruneThreshold)
        terms_.erase(it);
}

bool OperatorExpr::is_canonical() const
{
    for (const auto& [factors, c] : terms_) {
        for (std::size_t k = 0; k + 1 < factors.size(); ++k) {
            const auto& a = factors[k];
            const auto& b = factors[k + 1];
            if (canonical_less(b, a))
                return false;
            if (stats_ == Statistics::fermion && a == b)
                return false;
        }
    }
    return true;
}

void OperatorExpr::require_same_statistics(const OperatorExpr& other) const
{
    if (stats_ != other.stats_)
        throw std::invalid_argument("operator expressions with different statistics cannot be combined");
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& other)
{
    require_same_statistics(other);
    for (const auto& [factors, c] : other.terms_)
        add_term(c, factors);
    return *this;
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& other)
{
    require_same_statistics(other);
    for (const auto& [factors, c] : other.terms_)
        add_term(-c, factors);
    return *this;
}

OperatorExpr& OperatorExpr::operator*=(cplx c)
{
    if (c == cplx(0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= c;
        if (std::abs(it->second) < kPruneThreshold)
            it = terms_.erase(it);
        else
            ++it;
    }
    return *this;
}

OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b)
{
    a.require_same_statistics(b);
    OperatorExpr out(a.statistics());
    for (const auto& [fa, ca] : a.terms()) {
        for (const auto& [fb, cb] : b.terms()) {
            FactorString f;
            f.reserve(fa.size() + fb.size());
            f.insert(f.end(), fa.begin(), fa.end());
            f.insert(f.end(), fb.begin(), fb.end());
            out.add_term(ca * cb, f);
        }
    }
    return out;
}

// --- normal ordering ---------------------------------------------------------

bool canonical_less(const OperatorFactor& a, const OperatorFactor& b)
{
    return std::tuple(!a.dagger, a.species, a.level) < std::tuple(!b.dagger, b.species, b.level);
}

namespace {

bool same_mode(const OperatorFactor& a, const OperatorFactor& b)
{
    return a.species == b.species && a.level == b.level;
}

} // namespace

OperatorExpr normal_order(const OperatorExpr& expr)
{
    const bool fermion = expr.statistics() == Statistics::fermion;
    OperatorExpr out(expr.statistics());

    std::vector<std::pair<cplx, FactorString>> pending;
    pending.reserve(expr.size());
    for (const auto& [factors, c] : expr.terms())
        pending.emplace_back(c, factors);

    while (!pending.empty()) {
        auto [c, f] = std::move(pending.back());
        pending.pop_back();

        bool rewritten = false;
        for (std::size_t k = 0; k + 1 < f.size(); ++k) {
            const OperatorFactor a = f[k];
            const OperatorFactor b = f[k + 1];
            if (a == b) {
                // c_i c_i = c_i^+ c_i^+ = 0 for fermions; bosons simply commute.
                if (fermion) {
                    rewritten = true;
                    break;
                }
                continue;
            }
            if (!canonical_less(b, a))
                continue;

            rewritten = true;
            FactorString swapped = f;
            std::swap(swapped[k], swapped[k + 1]);
            if (!a.dagger && b.dagger && same_mode(a, b)) {
                // c c^+ = 1 - c^+ c (fermion) or 1 + c^+ c (boson).
                FactorString contracted;
                contracted.reserve(f.size() - 2);
                contracted.insert(contracted.end(), f.begin(), f.begin() + k);
                contracted.insert(contracted.end(), f.begin() + k + 2, f.end());
                pending.emplace_back(c, std::move(contracted));
                pending.emplace_back(fermion ? -c : c, std::move(swapped));
            } else {
                // Same-species fermions anticommute; other species commute.
                const bool anticommute = fermion && a.species == b.species;
                pending.emplace_back(anticommute ? -c : c, std::move(swapped));
            }
            break;
        }
        if (!rewritten)
            out.add_term(c, f);
    }
    return out;
}

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b)
{
    if (a.statistics() != b.statistics())
        throw std::invalid_argument("commutator: statistics mismatch");
    return normal_order(a * b - b * a);
}

// --- expectation values ----------------------------------------------------

const char* to_string(Block b)
{
    switch (b) {
    case Block::cc: return "cc";
    case Block::vv: return "vv";
    case Block::cv: return "cv";
    case Block::vc: return "vc";
    }
    return "?";
}

namespace {

Species row_species(Block b)
{
    return (b == Block::cc || b == Block::cv) ? Species::conduction : Species::valence;
}

Species col_species(Block b)
{
    return (b == Block::cc || b == Block::vc) ? Species::conduction : Species::valence;
}

Block block_of(Species row, Species col)
{
    if (row == Species::conduction)
        return col == Species::conduction ? Block::cc : Block::cv;
    return col == Species::conduction ? Block::vc : Block::vv;
}

std::string describe(const FactorString& f)
{
    std::ostringstream os;
    for (const auto& x : f)
        os << (x.species == Species::conduction ? "c" : "v") << x.level << (x.dagger ? "^+" : "")
           << " ";
    return os.str();
}

} // namespace

OperatorExpr observable(Statistics stats, const Coordinate& c)
{
    return OperatorExpr::monomial(stats, cplx(1.0),
                                  {create(col_species(c.block), c.j),
                                   annihilate(row_species(c.block), c.i)});
}

ExpectationForm to_expectation(const OperatorExpr& expr)
{
    const OperatorExpr canonical = expr.is_canonical() ? expr : normal_order(expr);
    ExpectationForm out;
    for (const auto& [f, coeff] : canonical.terms()) {
        if (f.empty()) {
            out.constant += coeff;
            continue;
        }
        if (f.size() != 2 || !f[0].dagger || f[1].dagger)
            throw NonClosedExpectation("non-closed expectation: term " + describe(f) +
                                       "is not of the form x^+ y");
        // <x_j^+ y_i> = rho^{yx}_{ij}
        const Coordinate coord{block_of(f[1].species, f[0].species), f[1].level, f[0].level};
        auto [it, inserted] = out.coefficients.try_emplace(coord, coeff);
        if (!inserted)
            it->second += coeff;
    }
    std::erase_if(out.coefficients,
                  [](const auto& kv) { return std::abs(kv.second) < kPruneThreshold; });
    return out;
}

// --- Hamiltonians ----------------------------------------------------------

namespace {

OperatorExpr free_hamiltonian(Statistics stats, Species s, const RealVector& energies)
{
    OperatorExpr h(stats);
    for (Eigen::Index k = 0; k < energies.size(); ++k) {
        const int level = static_cast<int>(k);
        h.add_term(cplx(energies(k)), {create(s, level), annihilate(s, level)});
    }
    return h;
}

// (1/2) sum_kl (E.M_kl x_k^+ x_l + E*.M*_kl x_l^+ x_k)
OperatorExpr intra_band_laser(Statistics stats, Species s, const DipoleMatrix& dipole,
                              const Vec3c& field)
{
    OperatorExpr h(stats);
    for (Eigen::Index k = 0; k < dipole.rows(); ++k) {
        for (Eigen::Index l = 0; l < dipole.cols(); ++l) {
            const cplx g = dot(field, dipole.at(k, l));
            const int kk = static_cast<int>(k);
            const int ll = static_cast<int>(l);
            h.add_term(0.5 * g, {create(s, kk), annihilate(s, ll)});
            h.add_term(0.5 * std::conj(g), {create(s, ll), annihilate(s, kk)});
        }
    }
    return h;
}

// sum_kl (E.M^cv_kl c_k^+ v_l + E*.M^cv*_kl v_l^+ c_k)
OperatorExpr inter_band_laser(Statistics stats, const DipoleMatrix& dipole_cv, const Vec3c& field)
{
    OperatorExpr h(stats);
    for (Eigen::Index k = 0; k < dipole_cv.rows(); ++k) {
        for (Eigen::Index l = 0; l < dipole_cv.cols(); ++l) {
            const cplx g = dot(field, dipole_cv.at(k, l));
            const int kk = static_cast<int>(k);
            const int ll = static_cast<int>(l);
            h.add_term(g, {create(Species::conduction, kk), annihilate(Species::valence, ll)});
            h.add_term(std::conj(g), {create(Species::valence, ll), annihilate(Species::conduction, kk)});
        }
    }
    return h;
}

[[noreturn]] void reject_kind(HamiltonianKind kind, const char* arity)
{
    std::ostringstream os;
    os << "Hamiltonian kind " << static_cast<int>(kind) << " is not defined for a " << arity
       << " system";
    throw std::invalid_argument(os.str());
}

} // namespace

OperatorExpr build_hamiltonian(const AnySystem& system, const Vec3c& field, HamiltonianKind kind,
                               Statistics stats)
{
    if (const auto* one = std::get_if<OneSpeciesSystem>(&system)) {
        if (one->is_degenerate())
            throw std::invalid_argument(
                "build_hamiltonian: degenerate system; expand the degenerate levels first");
        switch (kind) {
        case HamiltonianKind::free_e:
            return free_hamiltonian(stats, Species::conduction, one->energies);
        case HamiltonianKind::laser_L:
            return intra_band_laser(stats, Species::conduction, one->dipole, field);
        default:
            reject_kind(kind, "one-species");
        }
    }
    const auto& two = std::get<TwoSpeciesSystem>(system);
    switch (kind) {
    case HamiltonianKind::free_c:
        return free_hamiltonian(stats, Species::conduction, two.conduction_energies);
    case HamiltonianKind::free_v:
        return free_hamiltonian(stats, Species::valence, two.valence_energies);
    case HamiltonianKind::laser_c:
        return intra_band_laser(stats, Species::conduction, two.dipole_cc, field);
    case HamiltonianKind::laser_v:
        return intra_band_laser(stats, Species::valence, two.dipole_vv, field);
    case HamiltonianKind::laser_cv:
        return inter_band_laser(stats, two.dipole_cv, field);
    default:
        reject_kind(kind, "two-species");
    }
}

OperatorExpr total_hamiltonian(const AnySystem& system, const Vec3c& field, Statistics stats)
{
    std::vector<HamiltonianKind> kinds;
    if (std::holds_alternative<OneSpeciesSystem>(system))
        kinds = {HamiltonianKind::free_e, HamiltonianKind::laser_L};
    else
        kinds = {HamiltonianKind::free_c, HamiltonianKind::free_v, HamiltonianKind::laser_c,
                 HamiltonianKind::laser_v, HamiltonianKind::laser_cv};
    OperatorExpr h(stats);
    for (const auto kind : kinds)
        h += build_hamiltonian(system, field, kind, stats);
    return h;
}

// --- generator -------------------------------------------------------------

Eigen::Index Generator::index_of(const Coordinate& c) const
{
    const Eigen::Index row = row_species(c.block) == Species::conduction ? c.i : split.conduction + c.i;
    const Eigen::Index col = col_species(c.block) == Species::conduction ? c.j : split.conduction + c.j;
    return row + levels * col;
}

Coordinate Generator::coordinate_of(Eigen::Index index) const
{
    const Eigen::Index row = index % levels;
    const Eigen::Index col = index / levels;
    const auto species_of = [&](Eigen::Index a) {
        return a < split.conduction ? Species::conduction : Species::valence;
    };
    const auto local = [&](Eigen::Index a) {
        return static_cast<int>(a < split.conduction ? a : a - split.conduction);
    };
    return {block_of(species_of(row), species_of(col)), local(row), local(col)};
}

ComplexVector Generator::apply(const Matrix& rho) const
{
    if (rho.rows() != levels || rho.cols() != levels)
        throw DimensionError("Generator::apply: state dimension mismatch");
    const Eigen::Map<const ComplexVector> v(rho.data(), levels * levels);
    return matrix * v + constant;
}

Generator derive_generator(const AnySystem& system, const Vec3c& field, Statistics stats,
                           int max_levels)
{
    Generator g;
    if (const auto* one = std::get_if<OneSpeciesSystem>(&system)) {
        g.levels = one->levels();
        g.split = {one->levels(), 0};
    } else {
        const auto& two = std::get<TwoSpeciesSystem>(system);
        g.levels = two.total_levels();
        g.split = split_of(two);
    }
    if (g.levels > max_levels) {
        std::ostringstream os;
        os << "derive_generator: " << g.levels << " levels exceeds the oracle bound of " << max_levels;
        throw std::invalid_argument(os.str());
    }

    const OperatorExpr h = total_hamiltonian(system, field, stats);
    const Eigen::Index dim = g.levels * g.levels;
    g.matrix = Matrix::Zero(dim, dim);
    g.constant = ComplexVector::Zero(dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const Coordinate coord = g.coordinate_of(r);
        const ExpectationForm form = to_expectation(commutator(observable(stats, coord), h));
        g.constant(r) = form.constant;
        for (const auto& [c, coeff] : form.coefficients)
            g.matrix(r, g.index_of(c)) += coeff;
    }
    return g;
}

} // namespace qbloch::algebra
