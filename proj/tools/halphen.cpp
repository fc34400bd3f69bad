#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "halphen/experiments.hpp"
#include "halphen/models.hpp"
#include "halphen/poly_remez.hpp"
#include "halphen/rational_remez.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolverFailure = 3;

int rows_exit_code(const std::vector<halphen::ExperimentRow>& rows) {
    bool failed = false;
    for (const auto& r : rows) {
        if (r.status == "solver_error") return kExitSolverFailure;
        if (r.status != "ok" && r.status != "pass") failed = true;
    }
    return failed ? kExitCheckFailure : kExitOk;
}

void add_common(CLI::App* cmd, halphen::RunConfig& cfg, std::string& format) {
    cmd->add_option("--precision-bits", cfg.precision_bits, "Working precision in bits (>= 53)")
        ->envname("HALPHEN_PRECISION_BITS");
    cmd->add_option("--grid-size", cfg.grid_size, "Dense sampling grid size (>= 257)");
    cmd->add_option("--tol", cfg.tol, "Adaptive-fit tolerance (table1)");
    cmd->add_option("--out", cfg.out_path, "Output file (default: stdout)");
    cmd->add_option("--format", format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--plot", cfg.plot, "Also write an SVG plot");
    cmd->add_option("--plot-out", cfg.plot_path, "SVG output path");
    cmd->add_option("--threads", cfg.threads, "Worker threads (0 = hardware)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"halphen: minimax approximation toolkit for x^n and friends"};
    app.require_subcommand(1);

    halphen::RunConfig cfg;
    std::string format = "csv";

    auto* fig1 = app.add_subcommand("figure1", "Polynomial minimax errors of x^n vs the erfc model");
    std::vector<double> fig1_n{250.0, 1000.0};
    std::size_t fig1_kmax = 0;
    fig1->add_option("--n", fig1_n, "Powers n (repeatable)");
    fig1->add_option("--kmax", fig1_kmax, "Max degree (0 = up to the 1e-10 model band)");
    add_common(fig1, cfg, format);

    auto* fig2 = app.add_subcommand("figure2", "Rational minimax errors of x^n vs 2H^(k+1/2)");
    double fig2_n = 1000.0;
    std::size_t fig2_kmax = 8;
    fig2->add_option("--n", fig2_n, "Power n");
    fig2->add_option("--kmax", fig2_kmax, "Max type parameter k");
    add_common(fig2, cfg, format);

    auto* tab1 = app.add_subcommand("table1", "Adaptive Chebyshev degrees for x^n");
    add_common(tab1, cfg, format);

    auto* checks = app.add_subcommand("checks", "Equivalence, gap-bound, limit-law and symmetry checks");
    add_common(checks, cfg, format);

    auto* solve = app.add_subcommand("solve", "Single (n, k) minimax solve");
    double solve_n = 100.0, solve_lo = 0.0, solve_hi = 1.0;
    std::size_t solve_k = 4;
    bool solve_poly = false, solve_rational = false;
    solve->add_option("--n", solve_n, "Power n");
    solve->add_option("--k", solve_k, "Degree / type parameter");
    solve->add_option("--lo", solve_lo, "Domain lower end");
    solve->add_option("--hi", solve_hi, "Domain upper end");
    solve->add_flag("--poly", solve_poly, "Polynomial minimax");
    solve->add_flag("--rational", solve_rational, "Rational type-(k,k) minimax");
    add_common(solve, cfg, format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    cfg.format = (format == "json") ? halphen::OutputFormat::Json : halphen::OutputFormat::Csv;

    try {
        cfg.validate();
        halphen::precision::set_bits(cfg.precision_bits);

        if (fig1->parsed()) {
            std::vector<halphen::Real> ns;
            for (double n : fig1_n) ns.emplace_back(n);
            auto rows = halphen::run_figure1(ns, fig1_kmax, cfg);
            halphen::emit_rows(rows, cfg, halphen::PlotAxis::QuadraticK);
            return rows_exit_code(rows);
        }
        if (fig2->parsed()) {
            auto rows = halphen::run_figure2(halphen::Real(fig2_n), fig2_kmax, cfg);
            halphen::emit_rows(rows, cfg, halphen::PlotAxis::LinearK);
            return rows_exit_code(rows);
        }
        if (tab1->parsed()) {
            auto rows = halphen::run_table1(cfg);
            halphen::emit_rows(rows, cfg, halphen::PlotAxis::LinearK);
            return rows_exit_code(rows);
        }
        if (checks->parsed()) {
            auto rows = halphen::run_checks(cfg);
            halphen::emit_rows(rows, cfg, halphen::PlotAxis::LinearK);
            return rows_exit_code(rows);
        }

        // solve
        if (solve_poly == solve_rational) {
            std::cerr << "solve: pass exactly one of --poly / --rational\n";
            return kExitUsage;
        }
        halphen::Real n(solve_n);
        halphen::Interval domain{halphen::Real(solve_lo), halphen::Real(solve_hi)};
        auto target = [n](const halphen::Real& x) { return halphen::power(x, n); };
        halphen::ExperimentRow row;
        row.n = n;
        row.k = static_cast<long>(solve_k);
        row.status = "ok";
        if (solve_poly) {
            row.experiment = "solve_poly";
            row.model_error = halphen::newman_rivlin(solve_k, n);
            try {
                row.computed_error = halphen::remez_poly(target, solve_k, domain).error;
            } catch (const halphen::RemezError& e) {
                row.computed_error = e.best.error;
                row.status = "solver_error";
            }
        } else {
            row.experiment = "solve_rational";
            row.model_error = halphen::halphen_model(solve_k);
            halphen::RationalRemezOptions ropts;
            ropts.grid_size = cfg.grid_size;
            auto res = halphen::rational_remez(target, solve_k, domain, ropts);
            row.computed_error = res.error;
            if (res.status == halphen::SolveStatus::Stagnated) row.status = "stagnated";
        }
        row.ratio = row.model_error > halphen::Real(0) ? row.computed_error / row.model_error
                                                       : halphen::Real(0);
        std::vector<halphen::ExperimentRow> rows{row};
        halphen::emit_rows(rows, cfg, halphen::PlotAxis::LinearK);
        return rows_exit_code(rows);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolverFailure;
    }
}
