#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "halphen/experiments.hpp"
#include "halphen/models.hpp"

using namespace halphen;

TEST_CASE("RunConfig validation") {
    RunConfig cfg;
    cfg.precision_bits = 52;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.precision_bits = 53;
    cfg.grid_size = 128;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.grid_size = 257;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("CSV emit/parse round-trips byte-identically") {
    precision::set_bits(53);
    RunConfig cfg;
    auto rows = run_table1(cfg);
    REQUIRE(rows.size() == 7);

    std::ostringstream first;
    write_rows_csv(first, rows);
    std::istringstream in(first.str());
    auto parsed = parse_rows_csv(in);
    std::ostringstream second;
    write_rows_csv(second, parsed);
    CHECK(first.str() == second.str());
    CHECK(first.str().rfind("experiment,n,k,computed_error,model_error,ratio,status\n", 0) == 0);

    std::istringstream bad("wrong,header\n");
    CHECK_THROWS_AS(parse_rows_csv(bad), std::invalid_argument);
}

TEST_CASE("JSON emit/parse round-trips byte-identically") {
    precision::set_bits(53);
    RunConfig cfg;
    auto rows = run_table1(cfg);
    std::ostringstream first;
    write_rows_json(first, rows);
    std::istringstream in(first.str());
    auto parsed = parse_rows_json(in);
    std::ostringstream second;
    write_rows_json(second, parsed);
    CHECK(first.str() == second.str());
}

TEST_CASE("table1 rows carry the reference degrees and pass") {
    precision::set_bits(53);
    RunConfig cfg;
    auto rows = run_table1(cfg);
    long expected_n[] = {1, 4, 16, 64, 256, 1024, 4096};
    long expected_ref[] = {1, 4, 16, 44, 91, 178, 349};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].experiment == "table1");
        CHECK(to_long(rows[i].n) == expected_n[i]);
        CHECK(to_long(rows[i].model_error) == expected_ref[i]);
        CHECK(rows[i].status == "pass");
    }
    CHECK(all_rows_pass(rows));
}

TEST_CASE("figure2 rows: k=0 ratio and slope summary") {
    precision::set_bits(53);
    RunConfig cfg;
    cfg.grid_size = 1024;
    cfg.threads = 2;
    auto rows = run_figure2(Real(1000), 3, cfg);
    REQUIRE(rows.size() == 5);  // k = 0..3 plus the slope summary

    CHECK(rows[0].k == 0);
    CHECK(abs(rows[0].computed_error - Real(0.5)) <= Real(1e-9));
    CHECK(abs(rows[0].model_error - halphen_model(0)) <= Real(1e-15));
    CHECK(abs(rows[0].ratio - Real(0.762)) <= Real(0.002));

    const auto& slope = rows.back();
    CHECK(slope.experiment == "figure2_slope");
    CHECK(slope.status == "pass");
    CHECK(abs(slope.computed_error - log(halphen_constant())) <=
          abs(log(halphen_constant())) * Real(0.05));
}

TEST_CASE("runs are deterministic for a fixed config") {
    precision::set_bits(53);
    RunConfig cfg;
    cfg.grid_size = 512;
    cfg.threads = 2;
    auto a = run_figure2(Real(100), 2, cfg);
    cfg.threads = 1;
    auto b = run_figure2(Real(100), 2, cfg);
    std::ostringstream sa, sb;
    write_rows_csv(sa, a);
    write_rows_csv(sb, b);
    CHECK(sa.str() == sb.str());
}

TEST_CASE("figure1 rows stay near the model for a small power") {
    precision::set_bits(53);
    RunConfig cfg;
    cfg.threads = 2;
    auto rows = run_figure1({Real(25)}, 12, cfg);
    REQUIRE(rows.size() == 13);
    for (const auto& r : rows) {
        CHECK(r.status == "ok");
        if (r.model_error >= Real(1e-10) && r.model_error <= Real(0.1)) {
            CHECK(r.computed_error <= Real(3) * r.model_error);
            CHECK(r.computed_error >= r.model_error / Real(3));
        }
    }
}

TEST_CASE("SVG plots are written and self-contained") {
    precision::set_bits(53);
    RunConfig cfg;
    cfg.threads = 2;
    auto rows = run_figure1({Real(25)}, 10, cfg);
    const std::string path = "/tmp/halphen_test_plot.svg";
    write_svg(path, rows, PlotAxis::QuadraticK);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream body;
    body << in.rdbuf();
    CHECK(body.str().rfind("<svg", 0) == 0);
    CHECK(body.str().find("</svg>") != std::string::npos);
    CHECK(body.str().find("circle") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("all_rows_pass semantics") {
    ExperimentRow ok;
    ok.status = "ok";
    ExperimentRow pass;
    pass.status = "pass";
    ExperimentRow fail;
    fail.status = "fail";
    CHECK(all_rows_pass({ok, pass}));
    CHECK(!all_rows_pass({ok, fail}));
}
