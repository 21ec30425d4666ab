#include "qbloch/cli/commands.hpp"
#include "qbloch/cli/config.hpp"
#include "qbloch/cli/csv.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "series.hpp"

using namespace qbloch;
using namespace qbloch::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = QBLOCH_SCENARIO_DIR;

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("qbloch_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        ::setenv("QBLOCH_OUTPUT_DIR", dir_.c_str(), 1);
    }
    void TearDown() override
    {
        ::unsetenv("QBLOCH_OUTPUT_DIR");
        fs::remove_all(dir_);
    }

    fs::path write(const std::string& name, const std::string& text) const
    {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p;
    }

    static std::string slurp(const fs::path& p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    fs::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

const char* kTwoLevel = R"(
model: one_species
system:
  energies: [0.0, 1.0]
  dipole:
    - [0, [[1.0, 0.0], 0, 0]]
    - [[[1.0, 0.0], 0, 0], 0]
initial_state: {preset: diagonal, populations: [0.75, 0.25]}
stepper: {dt: 0.01, t_end: 1.0, record_every: 10}
)";

std::string replace(std::string text, const std::string& from, const std::string& to)
{
    const auto pos = text.find(from);
    if (pos == std::string::npos)
        throw std::logic_error("pattern not found: " + from);
    return text.replace(pos, from.size(), to);
}

} // namespace

// --- config validation -------------------------------------------------------

TEST_F(CliTest, NonzeroDipoleDiagonalExitsTwo)
{
    const auto p = write("bad.yaml", replace(kTwoLevel, "[[[1.0, 0.0], 0, 0], 0]", "[[[1.0, 0.0], 0, 0], [0, [0.5, 0.0], 0]]"));
    EXPECT_EQ(cmd_simulate(p, out_, err_), exit_invalid);
    EXPECT_NE(err_.str().find("M_kk = 0"), std::string::npos) << err_.str();
    EXPECT_NE(err_.str().find("M(1,1)"), std::string::npos) << err_.str();
}

TEST_F(CliTest, NonHermitianDipoleNamesEntry)
{
    const auto p = write("bad.yaml", replace(kTwoLevel, "[[[1.0, 0.0], 0, 0], 0]", "[[[1.0, 0.5], 0, 0], 0]"));
    EXPECT_EQ(cmd_simulate(p, out_, err_), exit_invalid);
    EXPECT_NE(err_.str().find("Hermitian"), std::string::npos) << err_.str();
}

TEST(Config, ErrorsNameFieldAndConstraint)
{
    const auto message = [](const std::string& text) -> std::string {
        try {
            (void)parse_config(text);
        } catch (const ConfigError& e) {
            return e.what();
        }
        return "";
    };
    EXPECT_NE(message(replace(kTwoLevel, "dt: 0.01", "dt: -1")).find("stepper"), std::string::npos);
    EXPECT_NE(message(replace(kTwoLevel, "record_every: 10", "record_evry: 10")).find("record_evry"),
              std::string::npos);
    EXPECT_NE(message(replace(kTwoLevel, "[0.75, 0.25]", "[0.75]")).find("initial_state.populations"),
              std::string::npos);
    EXPECT_NE(message(replace(kTwoLevel, "[0.75, 0.25]", "[1.5, -0.5]")).find("initial_state"),
              std::string::npos);
    EXPECT_NE(message(replace(kTwoLevel, "model: one_species", "model: quantum")).find("model"),
              std::string::npos);
    EXPECT_NE(message(replace(kTwoLevel, "energies: [0.0, 1.0]", "energies: [0.0, one]"))
                  .find("system.energies[1]"),
              std::string::npos);
    EXPECT_NE(message(replace(kTwoLevel, "- [0, [[1.0, 0.0], 0, 0]]", "- [0, [[1.0, 0.0], 0]]"))
                  .find("system.dipole[0][1]"),
              std::string::npos);
    EXPECT_EQ(message(kTwoLevel), "");
}

TEST_F(CliTest, MethodModelMismatchRejected)
{
    auto text = slurp(kScenarios / "electron_hole.yaml");
    text = replace(text, "method: rk4", "method: unitary_midpoint");
    EXPECT_EQ(cmd_simulate(write("eh.yaml", text), out_, err_), exit_invalid);
    EXPECT_NE(err_.str().find("rk4"), std::string::npos);
}

TEST_F(CliTest, MissingConfigFile)
{
    EXPECT_EQ(cmd_simulate(dir_ / "nope.yaml", out_, err_), exit_invalid);
}

// --- round trip and determinism ------------------------------------------------

TEST(Config, RoundTripIsIdempotent)
{
    for (const auto& entry : fs::directory_iterator(kScenarios)) {
        const ScenarioConfig c = load_config(entry.path());
        const std::string once = to_yaml(c);
        const ScenarioConfig again = parse_config(once);
        EXPECT_EQ(to_yaml(again), once) << entry.path();
        EXPECT_EQ(again.field, c.field);
        EXPECT_EQ(again.model, c.model);
        EXPECT_TRUE(again.initial_density().isApprox(c.initial_density(), 0.0));
    }
}

TEST(Config, DegenerateInitialStateDropsIntraLevelCoherence)
{
    const std::string text = R"(
model: degenerate_fdb
system:
  energies: [0.0, 1.0]
  degeneracies: [1, 2]
initial_state:
  preset: matrix
  matrix: [[0, 0, 0], [0, 0.5, 0.5], [0, 0.5, 0.5]]
stepper: {dt: 0.1, t_end: 1.0}
)";
    const auto c = parse_config(text);
    EXPECT_EQ(c.initial_density()(1, 2), cplx(0.0));
    const auto kept = parse_config(replace(text, "0.5]]", "0.5]]\n  keep_intra_level_coherence: true"));
    EXPECT_EQ(kept.initial_density()(1, 2), cplx(0.5));

    const auto cdb = parse_config(replace(text, "degenerate_fdb", "degenerate_cdb"));
    const auto& sigma = std::get<DensityMatrix>(cdb.initial_state_for_model());
    EXPECT_EQ(sigma.rows(), 2);
    EXPECT_NEAR(sigma(1, 1).real(), 0.5, 1e-15); // (0.5 + 0.5) / 2
}

TEST_F(CliTest, CsvIsByteIdentical)
{
    const fs::path config = kScenarios / "degenerate_cdb.yaml";
    ASSERT_EQ(cmd_simulate(config, out_, err_), exit_ok) << err_.str();
    const std::string first = slurp(dir_ / "degenerate_cdb.csv");
    fs::remove(dir_ / "degenerate_cdb.csv");
    ASSERT_EQ(cmd_simulate(config, out_, err_), exit_ok);
    EXPECT_EQ(slurp(dir_ / "degenerate_cdb.csv"), first);
    EXPECT_NE(first.find("degeneracy_bound_defect"), std::string::npos);
}

// --- simulate --------------------------------------------------------------------

TEST_F(CliTest, FreeTwoLevelPopulationsConstant)
{
    ASSERT_EQ(cmd_simulate(write("free.yaml", kTwoLevel), out_, err_), exit_ok) << err_.str();
    const auto cols = qbloch::testing::read_csv((dir_ / "free.csv").string());
    ASSERT_EQ(cols.at("t").size(), 11u);
    for (double p : cols.at("rho_0_0_re"))
        EXPECT_EQ(p, 0.75);
    for (double p : cols.at("rho_1_1_re"))
        EXPECT_EQ(p, 0.25);
    EXPECT_EQ(cols.at("t").back(), 1.0);
}

TEST_F(CliTest, CsvRoundTripsDoubles)
{
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23})
        EXPECT_EQ(std::stod(format_number(x, 17)), x);
    EXPECT_EQ(format_number(0.25, 17), "0.25");
}

TEST_F(CliTest, RabiPeriodFromCsv)
{
    ASSERT_EQ(cmd_simulate(kScenarios / "rabi.yaml", out_, err_), exit_ok) << err_.str();
    const auto cols = qbloch::testing::read_csv((dir_ / "rabi.csv").string());
    const auto peaks = qbloch::testing::peak_times(cols.at("t"), cols.at("rho_0_0_re"), 0.5);
    ASSERT_GE(peaks.size(), 2u);
    const double g = 0.5;
    const double expected = 2.0 * std::numbers::pi / (2.0 * g);
    EXPECT_NEAR(qbloch::testing::mean_period(peaks) / expected, 1.0, 1e-3);
    double top = 0.0;
    for (double p : cols.at("rho_0_0_re"))
        top = std::max(top, p);
    EXPECT_GT(top, 0.9999);
}

TEST_F(CliTest, ElectronHoleAndReducedColumns)
{
    ASSERT_EQ(cmd_simulate(kScenarios / "electron_hole.yaml", out_, err_), exit_ok) << err_.str();
    const auto eh = qbloch::testing::read_csv((dir_ / "electron_hole.csv").string());
    EXPECT_TRUE(eh.count("rho_h_0_0_re"));
    EXPECT_TRUE(eh.count("rho_ch_0_0_im"));

    auto text = replace(slurp(kScenarios / "electron_hole.yaml"), "model: electron_hole", "model: gehrig_hess");
    ASSERT_EQ(cmd_simulate(write("gh.yaml", text), out_, err_), exit_ok) << err_.str();
    const auto gh = qbloch::testing::read_csv((dir_ / "gh.csv").string());
    ASSERT_TRUE(gh.count("n_e_0"));
    // One level per band has no intra-band coherences, so both forms agree.
    for (std::size_t k = 0; k < gh.at("t").size(); ++k)
        EXPECT_NEAR(gh.at("n_e_0")[k], eh.at("rho_c_0_0_re")[k], 1e-12);
}

// --- verify ----------------------------------------------------------------------

TEST(Verify, SmallRunPasses)
{
    std::ostringstream out;
    std::ostringstream err;
    EXPECT_EQ(cmd_verify({2, 42, 1}, out, err), exit_ok) << err.str();
    const auto rows = run_verification({2, 42, 1});
    ASSERT_EQ(rows.size(), 4u);
    for (const auto& r : rows)
        EXPECT_LT(r.deviation, 1e-10) << r.check;
}

TEST(Verify, LevelBound)
{
    std::ostringstream out;
    std::ostringstream err;
    EXPECT_EQ(cmd_verify({9, 1, 1}, out, err), exit_invalid);
    EXPECT_EQ(cmd_verify({0, 1, 1}, out, err), exit_invalid);
}

TEST(Verify, CorruptedRhsReportsCoordinate)
{
    VerifyHooks hooks;
    hooks.liouville = [](const Matrix& v, const DensityMatrix& rho, double hbar) {
        Matrix d = liouville_rhs(v, rho, hbar);
        d(0, 1) = -d(0, 1);
        return d;
    };
    std::ostringstream out;
    std::ostringstream err;
    EXPECT_EQ(cmd_verify({3, 7, 2}, out, err, hooks), exit_failure);
    EXPECT_NE(err.str().find("fermion generator vs one-species rhs at (cc, 0, 1)"), std::string::npos)
        << err.str();
}

TEST(Verify, CorruptedElectronHoleRhsDetected)
{
    VerifyHooks hooks;
    hooks.electron_hole = [](const ElectronHoleState& s, const TwoSpeciesSystem& sys, const Vec3c& f) {
        ElectronHoleState d = eh_rhs(s, sys, f);
        d.rho_h(0, 0) += 1e-3;
        return d;
    };
    const auto rows = run_verification({2, 3, 2}, hooks);
    EXPECT_GT(rows[3].deviation, 1e-10);
    EXPECT_EQ(rows[3].coordinate, "(h, 0, 0)");
    EXPECT_LT(rows[0].deviation, 1e-10);
}

// --- compare ---------------------------------------------------------------------

TEST_F(CliTest, CompareZeroFieldHasNoDiscrepancy)
{
    auto text = slurp(kScenarios / "gh_divergence.yaml");
    text = text.substr(0, text.find("field:")) + text.substr(text.find("stepper:"));
    const auto c = parse_config(text);
    std::ostringstream csv;
    const auto s = run_comparison(c, csv);
    EXPECT_EQ(s.max_population_discrepancy, 0.0);
    EXPECT_EQ(s.max_intra_band_coherence, 0.0);
}

TEST_F(CliTest, CompareSingleLevelBandsAgree)
{
    const auto c = load_config(kScenarios / "rabi.yaml");
    std::ostringstream csv;
    const auto s = run_comparison(c, csv);
    EXPECT_LT(s.max_population_discrepancy, 1e-12);
    EXPECT_EQ(s.max_intra_band_coherence, 0.0);
}

TEST_F(CliTest, CompareScenarioShowsCoherenceGrowth)
{
    ASSERT_EQ(cmd_compare(kScenarios / "gh_divergence.yaml", out_, err_), exit_ok) << err_.str();
    const auto cols = qbloch::testing::read_csv((dir_ / "gh_divergence.csv").string());
    double growth = 0.0;
    for (double x : cols.at("max_intra_band_coherence"))
        growth = std::max(growth, x);
    EXPECT_GT(growth, 1e-3);
    EXPECT_NE(out_.str().find("max intra-band coherence"), std::string::npos);
}

TEST_F(CliTest, CompareRejectsOneSpecies)
{
    EXPECT_EQ(cmd_compare(write("one.yaml", kTwoLevel), out_, err_), exit_invalid);
}

// --- entry point ---------------------------------------------------------------

TEST_F(CliTest, RunDispatch)
{
    const char* none[] = {"qbloch"};
    EXPECT_EQ(run(1, none, out_, err_), exit_invalid);
    const char* help[] = {"qbloch", "--help"};
    EXPECT_EQ(run(2, help, out_, err_), exit_ok);
    const char* verify[] = {"qbloch", "verify", "--levels", "2", "--trials", "1"};
    EXPECT_EQ(run(6, verify, out_, err_), exit_ok);
    const std::string path = (kScenarios / "two_level_free.yaml").string();
    const char* simulate[] = {"qbloch", "simulate", path.c_str()};
    EXPECT_EQ(run(3, simulate, out_, err_), exit_ok) << err_.str();
    EXPECT_TRUE(fs::exists(dir_ / "two_level_free.csv"));
}

TEST(OutputPath, EnvironmentOverride)
{
    ScenarioConfig c;
    ::setenv("QBLOCH_OUTPUT_DIR", "/tmp/qb", 1);
    EXPECT_EQ(output_path(c, "a/b/run.yaml", ".csv"), fs::path("/tmp/qb/run.csv"));
    c.output.path = "/abs/x.csv";
    EXPECT_EQ(output_path(c, "run.yaml", ".csv"), fs::path("/abs/x.csv"));
    ::unsetenv("QBLOCH_OUTPUT_DIR");
    c.output.path = "rel.csv";
    EXPECT_EQ(output_path(c, "run.yaml", ".csv"), fs::path("rel.csv"));
}
