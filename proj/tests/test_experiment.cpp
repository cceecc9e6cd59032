#include <doctest.h>

#include <cmath>
#include <sstream>

#include "weakmeas/experiment.hpp"
#include "weakmeas/result_table.hpp"

using namespace weakmeas;

namespace {

ExperimentConfig config_from(const std::string& text) {
    return parse_config(text);
}

const char* kSweepConfig = R"(
[experiment]
type = intensity_sweep
[qubit]
alpha_re = 0.70710678118654752
alpha_im = 0
beta_re = 0
beta_im = 0.70710678118654752
[pointer]
n_max = 2
c = 0 0.70710678118654752 0
c = 1 0.70710678118654752 0
m = 1
[sweep]
param = g
start = 0
stop = 0.1
points = 11
)";

std::size_t column_index(const ResultTable& table, const std::string& name) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        if (table.columns[i] == name) return i;
    throw std::runtime_error("missing column " + name);
}

} // namespace

TEST_SUITE_BEGIN("experiment");

TEST_CASE("intensity sweep: total stays flat while the split moves linearly") {
    ResultTable table = run_experiment(config_from(kSweepConfig));
    REQUIRE(table.rows.size() == 11);
    const std::size_t col_g = column_index(table, "g");
    const std::size_t col_total = column_index(table, "i_total");
    const std::size_t col_s = column_index(table, "i_s");
    const double i1 = 0.5;
    for (const auto& row : table.rows)
        CHECK(row[col_total] == doctest::Approx(i1).epsilon(1e-14));
    // slope of i_s in g is |c_1|^2 * 2 * Im(alpha* beta) * m = |c_1|^2
    const double slope = (table.rows.back()[col_s] - table.rows.front()[col_s]) /
                         (table.rows.back()[col_g] - table.rows.front()[col_g]);
    CHECK(slope == doctest::Approx(i1).epsilon(1e-12));
}

TEST_CASE("single point at g = 0 reproduces the Born split") {
    std::string text = R"(
[experiment]
type = intensity_sweep
[qubit]
alpha_re = 0.6
alpha_im = 0
beta_re = 0
beta_im = 0.8
[pointer]
n_max = 1
c = 0 0.6 0
c = 1 0.8 0
m = 1
[coupling]
g = 0
)";
    ResultTable table = run_experiment(config_from(text));
    REQUIRE(table.rows.size() == 1);
    const auto& row = table.rows[0];
    CHECK(row[column_index(table, "i_s")] == doctest::Approx(0.64 * 0.36).epsilon(1e-12));
    CHECK(row[column_index(table, "i_comp")] == doctest::Approx(0.64 * 0.64).epsilon(1e-12));
}

TEST_CASE("exact_vs_first_order emits both routes and their residual") {
    std::string text = R"(
[experiment]
type = exact_vs_first_order
[qubit]
alpha_re = 0.5
alpha_im = 0
beta_re = 0
beta_im = 0.86602540378443865
[pointer]
n_max = 1
c = 0 0.70710678118654752 0
c = 1 0.70710678118654752 0
m = 1
[sweep]
param = g
start = 0.001
stop = 0.1
points = 3
scale = log
)";
    ResultTable table = run_experiment(config_from(text));
    REQUIRE(table.rows.size() == 3);
    const std::size_t col_first = column_index(table, "I_s_first");
    const std::size_t col_exact = column_index(table, "I_s_exact");
    const std::size_t col_residual = column_index(table, "residual");
    const std::size_t col_total = column_index(table, "I_total");
    for (const auto& row : table.rows) {
        CHECK(row[col_residual] ==
              doctest::Approx(std::abs(row[col_first] - row[col_exact])).epsilon(1e-9));
        CHECK(row[col_total] == doctest::Approx(0.5).epsilon(1e-13));
    }
    // residual grows roughly quadratically over two decades
    CHECK(table.rows[2][col_residual] / table.rows[0][col_residual] > 1e3);
}

TEST_CASE("ion protocol rows: full drive tracks the dispersive model") {
    std::string base = R"(
[experiment]
type = ion_protocol
[qubit]
alpha_re = 0.70710678118654752
alpha_im = 0
beta_re = 0
beta_im = 0.70710678118654752
[pointer]
n_max = 1
c = 0 0.70710678118654752 0
c = 1 0.70710678118654752 0
[coupling]
g = 0.007853981633974483
[ion]
omega0 = 1
delta = 40
)";
    // g chosen so the pulse spans two full detuning periods (delta t = 4 pi)
    ResultTable eff = run_experiment(config_from(base + "mode = effective\n"));
    ResultTable full = run_experiment(config_from(base + "mode = full_jc\n"));
    REQUIRE(eff.rows.size() == 1);
    REQUIRE(full.rows.size() == 1);
    double worst = 0.0;
    for (const std::string col : {"p_up_r", "p_up_r_down", "p_up_r_up"}) {
        const std::size_t c = column_index(eff, col);
        worst = std::max(worst, std::abs(eff.rows[0][c] - full.rows[0][c]));
    }
    CHECK(worst <= 1e-2);
}

TEST_CASE("estimate sweeps seeds deterministically") {
    std::string text = R"(
[experiment]
type = estimate
[qubit]
alpha_re = 0.70710678118654752
alpha_im = 0
beta_re = 0
beta_im = 0.70710678118654752
[pointer]
n_max = 1
c = 0 0.70710678118654752 0
c = 1 0.70710678118654752 0
m = 1
[coupling]
g = 0.01
[sampling]
shots = 20000
seed = 5
[sweep]
param = seed
start = 0
stop = 9
points = 10
)";
    ResultTable a = run_experiment(config_from(text));
    ResultTable b = run_experiment(config_from(text));
    REQUIRE(a.rows.size() == 10);
    CHECK(a.rows == b.rows);
    const std::size_t col_ghat = column_index(a, "g_hat");
    const std::size_t col_se = column_index(a, "std_error");
    int covered = 0;
    for (const auto& row : a.rows)
        if (std::abs(row[col_ghat] - 0.01) <= 3.0 * row[col_se]) ++covered;
    CHECK(covered >= 9);
}

TEST_CASE("metadata reproduces the config exactly") {
    ExperimentConfig cfg = config_from(kSweepConfig);
    ResultTable table = run_experiment(cfg);
    const std::string* echo = table.find_metadata("config");
    REQUIRE(echo != nullptr);
    CHECK(*echo == cfg.source_text);
    ExperimentConfig replay = parse_config(*echo);
    ResultTable table2 = run_experiment(replay);
    CHECK(table.rows == table2.rows);
}

TEST_CASE("empty tables serialize to a header-only CSV") {
    ResultTable table;
    table.columns = {"a", "b"};
    std::ostringstream out;
    emit_csv(table, out);
    CHECK(out.str() == "a,b\n");
}

TEST_CASE("CSV uses 17 significant digits and LF endings") {
    ResultTable table;
    table.columns = {"x"};
    table.rows = {{1.0 / 3.0}};
    std::ostringstream out;
    emit_csv(table, out);
    CHECK(out.str() == "x\n0.33333333333333331\n");
}

TEST_CASE("JSON round-trips the table") {
    ResultTable table = run_experiment(config_from(kSweepConfig));
    std::ostringstream out;
    emit_json(table, out);
    std::istringstream in(out.str());
    ResultTable back = read_json_table(in);
    CHECK(back.columns == table.columns);
    CHECK(back.rows == table.rows);
    CHECK(back.metadata == table.metadata);
}

TEST_CASE("two emissions of one experiment are byte-identical") {
    ResultTable a = run_experiment(config_from(kSweepConfig));
    ResultTable b = run_experiment(config_from(kSweepConfig));
    std::ostringstream csv_a, csv_b, json_a, json_b;
    emit_csv(a, csv_a);
    emit_csv(b, csv_b);
    emit_json(a, json_a);
    emit_json(b, json_b);
    CHECK(csv_a.str() == csv_b.str());
    CHECK(json_a.str() == json_b.str());
}

TEST_CASE("ragged tables are rejected") {
    ResultTable table;
    table.columns = {"a", "b"};
    table.rows = {{1.0}};
    std::ostringstream out;
    CHECK_THROWS_AS(emit_csv(table, out), ValidationError);
}

TEST_SUITE_END();
