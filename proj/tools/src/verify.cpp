#include <algorithm>
#include <sstream>

#include "qbloch/algebra.hpp"
#include "qbloch/cli/commands.hpp"
#include "qbloch/random.hpp"

namespace qbloch::cli {

namespace {

std::string_view block_name(algebra::Block b)
{
    switch (b) {
    case algebra::Block::cc:
        return "cc";
    case algebra::Block::vv:
        return "vv";
    case algebra::Block::cv:
        return "cv";
    case algebra::Block::vc:
        return "vc";
    }
    return "?";
}

std::string format_coordinate(std::string_view block, Eigen::Index i, Eigen::Index j)
{
    std::ostringstream os;
    os << "(" << block << ", " << i << ", " << j << ")";
    return os.str();
}

std::string format_coordinate(const algebra::Coordinate& c)
{
    return format_coordinate(block_name(c.block), c.i, c.j);
}

double scale_of(const ComplexVector& v)
{
    const double s = v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
    return s > 0.0 ? s : 1.0;
}

// Relative deviation between two vectors and the index of the worst entry.
std::pair<double, Eigen::Index> deviation(const ComplexVector& got, const ComplexVector& expected)
{
    Eigen::Index worst = 0;
    const double d = (got - expected).cwiseAbs().maxCoeff(&worst);
    return {d / scale_of(expected), worst};
}

ComplexVector flatten(const Matrix& m)
{
    return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

void record(VerifyRow& row, double dev, std::string coordinate, int levels)
{
    if (row.coordinate.empty() || dev > row.deviation) {
        row.deviation = dev;
        row.coordinate = std::move(coordinate);
        row.levels = levels;
    }
}

} // namespace

std::vector<VerifyRow> run_verification(const VerifyOptions& options, const VerifyHooks& hooks)
{
    if (options.max_levels < 1 || options.max_levels > kVerifyMaxLevels)
        throw ConfigError("verify: --levels must be in [1, " + std::to_string(kVerifyMaxLevels) +
                          "], got " + std::to_string(options.max_levels));
    if (options.trials < 1)
        throw ConfigError("verify: --trials must be >= 1");

    std::vector<VerifyRow> rows{
        {"fermion generator vs one-species rhs", 0.0, {}, 0},
        {"boson generator vs fermion generator", 0.0, {}, 0},
        {"two-species generator vs rhs", 0.0, {}, 0},
        {"electron-hole rhs vs chain rule", 0.0, {}, 0},
    };

    for (int trial = 0; trial < options.trials; ++trial) {
        auto rng = sampling::trial_rng(options.seed, static_cast<std::uint64_t>(trial));
        const int n = options.max_levels - trial % options.max_levels;

        {
            const OneSpeciesSystem s = sampling::random_one_species(rng, n);
            const Vec3c field = sampling::random_vec3(rng);
            const DensityMatrix rho = sampling::random_density(rng, n);
            const auto gf = algebra::derive_generator(s, field, algebra::Statistics::fermion, kVerifyMaxLevels);
            const Matrix expected =
                I * s.hbar * hooks.liouville(potential_one_species(s, field), rho, s.hbar);
            const auto [dev, at] = deviation(gf.apply(rho), flatten(expected));
            record(rows[0], dev, format_coordinate(gf.coordinate_of(at)), n);

            const auto gb = algebra::derive_generator(s, field, algebra::Statistics::boson, kVerifyMaxLevels);
            Eigen::Index r = 0;
            Eigen::Index c = 0;
            const double scale = std::max(gf.matrix.cwiseAbs().maxCoeff(), 1e-300);
            const double bdev = (gb.matrix - gf.matrix).cwiseAbs().maxCoeff(&r, &c) / scale;
            record(rows[1], bdev, format_coordinate(gf.coordinate_of(r)), n);
        }

        const int nc = std::max(1, (n + 1) / 2);
        const int nv = std::max(1, n / 2);
        const TwoSpeciesSystem s = sampling::random_two_species(rng, nc, nv);
        const Vec3c field = sampling::random_vec3(rng);
        const DensityMatrix rho = sampling::random_density(rng, nc + nv);
        const Matrix drho = hooks.liouville(potential_two_species(s, field), rho, s.hbar);
        {
            const auto g = algebra::derive_generator(s, field, algebra::Statistics::fermion, kVerifyMaxLevels);
            const Matrix expected = I * s.hbar * drho;
            const auto [dev, at] = deviation(g.apply(rho), flatten(expected));
            record(rows[2], dev, format_coordinate(g.coordinate_of(at)), nc + nv);
        }
        {
            const BandSplit split = split_of(s);
            const ElectronHoleState expected = electron_hole_derivative(drho, split);
            const ElectronHoleState got = hooks.electron_hole(to_electron_hole(rho, split), s, field);
            const double scale = std::max({expected.rho_c.cwiseAbs().maxCoeff(),
                                           expected.rho_h.cwiseAbs().maxCoeff(),
                                           expected.rho_ch.cwiseAbs().maxCoeff(), 1e-300});
            const std::pair<std::string_view, std::pair<const Matrix*, const Matrix*>> blocks[] = {
                {"c", {&got.rho_c, &expected.rho_c}},
                {"h", {&got.rho_h, &expected.rho_h}},
                {"ch", {&got.rho_ch, &expected.rho_ch}},
            };
            for (const auto& [name, pair] : blocks) {
                Eigen::Index i = 0;
                Eigen::Index j = 0;
                const double dev = (*pair.first - *pair.second).cwiseAbs().maxCoeff(&i, &j) / scale;
                record(rows[3], dev, format_coordinate(name, i, j), nc + nv);
            }
        }
    }
    return rows;
}

} // namespace qbloch::cli
