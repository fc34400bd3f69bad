#ifndef HALPHEN_EXPERIMENTS_HPP
#define HALPHEN_EXPERIMENTS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "halphen/real.hpp"

namespace halphen {

// One experiment cell: computed quantity against its model/bound.
struct ExperimentRow {
    std::string experiment;
    Real n = Real(0);
    long k = 0;
    Real computed_error = Real(0);
    Real model_error = Real(0);
    Real ratio = Real(0);  // computed/model when model > 0, else 0
    std::string status;    // "ok", "pass", "fail", "solver_error"
};

enum class OutputFormat { Csv, Json };

struct RunConfig {
    unsigned precision_bits = 53;
    std::size_t grid_size = 4096;
    double tol = 1e-15;        // adaptive-fit tolerance (table1)
    std::string out_path;      // empty: stdout only
    OutputFormat format = OutputFormat::Csv;
    bool plot = false;
    std::string plot_path;     // defaults to out_path with .svg when plotting
    unsigned threads = 0;      // 0: hardware concurrency

    void validate() const;  // precision_bits >= 53, grid_size >= 257
};

// Polynomial minimax of x^n vs (1/2)erfc(k/sqrt(n)) for k = 0..k_max
// (k_max = 0 picks floor(4.5*sqrt(n)), covering models down to 1e-10).
std::vector<ExperimentRow> run_figure1(const std::vector<Real>& n_list, std::size_t k_max,
                                       const RunConfig& config);

// Rational minimax of x^n vs 2H^(k+1/2) for k = 0..k_max, plus a summary row
// with the fitted slope of log E against k.
std::vector<ExperimentRow> run_figure2(const Real& n, std::size_t k_max, const RunConfig& config);

// Adaptive Chebyshev degrees for x^n at tol vs the reference degrees.
std::vector<ExperimentRow> run_table1(const RunConfig& config);

// Lemma-1 equivalence, Lemma-2 bound, the n->infinity limit law and the
// even-symmetry reduction, one pass/fail row per check.
std::vector<ExperimentRow> run_checks(const RunConfig& config);

bool all_rows_pass(const std::vector<ExperimentRow>& rows);

// CSV with the fixed header experiment,n,k,computed_error,model_error,ratio,status.
// Scalars are full-precision decimal; parse/serialize round-trips byte-identically
// at the same working precision.
void write_rows_csv(std::ostream& os, const std::vector<ExperimentRow>& rows);
std::vector<ExperimentRow> parse_rows_csv(std::istream& is);
void write_rows_json(std::ostream& os, const std::vector<ExperimentRow>& rows);
std::vector<ExperimentRow> parse_rows_json(std::istream& is);

enum class PlotAxis { QuadraticK, LinearK };

// Self-contained SVG: log-scaled errors against k (or k^2), computed values as
// markers and the model as a line, one series pair per n.
void write_svg(const std::string& path, const std::vector<ExperimentRow>& rows, PlotAxis axis);

// Writes rows to config.out_path (or stdout) in the configured format, and a
// plot when requested. Returns the exit code contribution: 0 when every row
// passed, 1 otherwise.
int emit_rows(const std::vector<ExperimentRow>& rows, const RunConfig& config, PlotAxis axis);

}  // namespace halphen

#endif
