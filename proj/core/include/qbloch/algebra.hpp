#pragma once

// Second-quantization engine: operator expressions over conduction/valence
// creation and annihilation operators, normal ordering under fermion or boson
// rules, commutators, and reduction of quadratic expressions to density-matrix
// entries. It re-derives the Bloch right-hand sides from the Hamiltonians and
// serves as the oracle for the hand-coded models.

#include <compare>
#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include "qbloch/system.hpp"
#include "qbloch/types.hpp"

namespace qbloch::algebra {

enum class Statistics : std::uint8_t { fermion, boson };

/// Ordering rank: conduction < valence.
enum class Species : std::uint8_t { conduction = 0, valence = 1 };

/// c_i, c_i^dagger (conduction) or v_i, v_i^dagger (valence).
/// Holes are expressed through valence factors: d_i^dagger = v_i, d_i = v_i^dagger.
struct OperatorFactor {
    Species species = Species::conduction;
    int level = 0;
    bool dagger = false;

    friend bool operator==(const OperatorFactor&, const OperatorFactor&) = default;
    friend auto operator<=>(const OperatorFactor&, const OperatorFactor&) = default;
};

inline OperatorFactor create(Species s, int level) { return {s, level, true}; }
inline OperatorFactor annihilate(Species s, int level) { return {s, level, false}; }

using FactorString = std::vector<OperatorFactor>;

struct OperatorMonomial {
    cplx coefficient;
    FactorString factors;
};

/// Coefficients whose magnitude falls below this after combination are dropped.
inline constexpr double kPruneThreshold = 1e-15;

/**
 * Sum of complex-weighted operator products under one statistics.
 *
 * Terms are keyed by their factor sequence, so identical sequences always
 * combine. An expression is canonical when every key is normal-ordered
 * (see normal_order); arbitrary products are representable too.
 */
class OperatorExpr {
public:
    using TermMap = std::map<FactorString, cplx>;

    explicit OperatorExpr(Statistics stats = Statistics::fermion) : stats_(stats) {}

    static OperatorExpr scalar(Statistics stats, cplx value);
    static OperatorExpr factor(Statistics stats, const OperatorFactor& f);
    static OperatorExpr monomial(Statistics stats, cplx coefficient, FactorString factors);

    Statistics statistics() const { return stats_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    /// Coefficient of an exact factor sequence, zero when absent.
    cplx coefficient(const FactorString& factors) const;

    /// Adds c * factors; the result is pruned if it cancels.
    void add_term(cplx c, const FactorString& factors);

    bool is_canonical() const;

    OperatorExpr& operator+=(const OperatorExpr& other);
    OperatorExpr& operator-=(const OperatorExpr& other);
    OperatorExpr& operator*=(cplx c);

    friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
    friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
    friend OperatorExpr operator*(OperatorExpr a, cplx c) { return a *= c; }
    friend OperatorExpr operator*(cplx c, OperatorExpr a) { return a *= c; }

    /// Operator product (concatenation of factor strings); not normal-ordered.
    friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b);

private:
    void require_same_statistics(const OperatorExpr& other) const;

    Statistics stats_;
    TermMap terms_;
};

/// Canonical ordering key: daggered before undaggered, then (species, level).
bool canonical_less(const OperatorFactor& a, const OperatorFactor& b);

/// Rewrites into canonical form using the (anti)commutation rules.
OperatorExpr normal_order(const OperatorExpr& expr);

/// Canonical form of ab - ba. Throws std::invalid_argument on mixed statistics.
OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b);

// --- expectation values --------------------------------------------------

/// Density-matrix block: rho^{yx}_{ij} = <x_j^dagger y_i>.
enum class Block : std::uint8_t { cc, vv, cv, vc };

const char* to_string(Block b);

struct Coordinate {
    Block block = Block::cc;
    int i = 0;
    int j = 0;

    friend bool operator==(const Coordinate&, const Coordinate&) = default;
    friend auto operator<=>(const Coordinate&, const Coordinate&) = default;
};

/// sum_k coeff_k * rho^{block}_{ij} + constant.
struct ExpectationForm {
    cplx constant{0.0, 0.0};
    std::map<Coordinate, cplx> coefficients;
};

/// Raised when an expression does not reduce to quadratic expectations.
class NonClosedExpectation : public Error {
public:
    using Error::Error;
};

/// The observable x_j^dagger y_i whose expectation is rho^{block}_{ij}.
OperatorExpr observable(Statistics stats, const Coordinate& c);

ExpectationForm to_expectation(const OperatorExpr& expr);

// --- Hamiltonians ----------------------------------------------------------

enum class HamiltonianKind : std::uint8_t {
    free_e,   // sum eps_k c_k^dagger c_k
    laser_L,  // one-species laser coupling, with the 1/2 prefactor
    free_c,
    free_v,
    laser_c,  // intra-band laser couplings, with the 1/2 prefactor
    laser_v,
    laser_cv, // inter-band coupling, no 1/2 prefactor
};

using AnySystem = std::variant<OneSpeciesSystem, TwoSpeciesSystem>;

/// Literal second-quantized Hamiltonian for a field value frozen at one time.
/// Degenerate one-species systems must be expanded first.
OperatorExpr build_hamiltonian(const AnySystem& system, const Vec3c& field, HamiltonianKind kind,
                               Statistics stats = Statistics::fermion);

/// Sum of every Hamiltonian kind applicable to the system.
OperatorExpr total_hamiltonian(const AnySystem& system, const Vec3c& field,
                               Statistics stats = Statistics::fermion);

// --- generator -------------------------------------------------------------

inline constexpr int kDefaultMaxGeneratorLevels = 8;

/**
 * Linear map i*hbar d/dt vec(rho) = matrix * vec(rho) + constant.
 *
 * vec is column-major over the full composite matrix: coordinate (a,b) of
 * the composite index set maps to a + n*b. For two-species systems the
 * composite index lists conduction levels first.
 */
struct Generator {
    Eigen::Index levels = 0;
    BandSplit split; // valence == 0 for one species
    Matrix matrix;
    ComplexVector constant;

    Eigen::Index index_of(const Coordinate& c) const;
    Coordinate coordinate_of(Eigen::Index index) const;

    ComplexVector apply(const Matrix& rho) const;
};

/// Builds the generator by commuting every observable with the total
/// Hamiltonian and reducing to expectations. Oracle path; limited to
/// `max_levels` total levels.
Generator derive_generator(const AnySystem& system, const Vec3c& field,
                           Statistics stats = Statistics::fermion,
                           int max_levels = kDefaultMaxGeneratorLevels);

} // namespace qbloch::algebra
