#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emvs/logistic.hpp"
#include "emvs/probit.hpp"
#include "emvs/ssvs.hpp"
#include "emvs/types.hpp"

namespace emvs::harness {

// Spike-variance grid for a regularization path. Values must be strictly
// increasing, positive, and below the slab variance they will be paired with.
struct Nu0Grid {
    std::vector<double> values;

    void validate(double nu1) const;
    static Nu0Grid logistic_default();  // 1.02, 1.04, ..., 2.00
    static Nu0Grid probit_default();    // 0.0002, 0.0004, ..., 0.0100
};

// Confusion-matrix rates of a selected set against the true support. A rate
// whose denominator is zero is marked undefined rather than coerced to 0 or 1;
// averages must skip undefined entries.
struct SelectionMetrics {
    double tpr = 0.0, tnr = 0.0, ppv = 0.0, npv = 0.0;
    bool tpr_defined = false, tnr_defined = false, ppv_defined = false, npv_defined = false;
};

SelectionMetrics selection_metrics(const std::vector<bool>& selected,
                                   const std::vector<bool>& truth);

struct PathPoint {
    double nu0 = 0.0;
    FitResult fit;
    bool failed = false;
    std::string error;  // what() of the failure, empty otherwise
};

struct PathResult {
    std::vector<PathPoint> points;
    double wall_time = 0.0;  // seconds, whole path
};

// One independent fit per grid point (fresh initialization each time; warm
// starts stay inside a fit, never across nu0 values). The prototype config is
// copied per point with only nu0 replaced, so a single-point path equals a
// direct fit. Fit failures mark the point and the path continues.
PathResult run_path(const Dataset& d, const Nu0Grid& grid,
                    const LogisticEmConfig& proto);

// Probit variant; for tall designs (p <= n) computes X'X once and shares it
// across grid points unless the prototype already carries a gram cache.
PathResult run_path(const Dataset& d, const Nu0Grid& grid, const ProbitEmConfig& proto);

enum class Model { Logistic, Probit, Both };

// The replicate simulation study: per replicate, draw a correlated design,
// true coefficients, and binary labels; standardize; fit the requested models
// over their grids; score each grid point against the true support.
struct StudyConfig {
    std::size_t n = 100;
    std::size_t p = 1000;
    std::size_t p_gamma = 10;
    double rho = 0.6;
    double sigma_eps2 = 3.0;
    double beta_max = 2.0;
    std::size_t replicates = 50;
    Nu0Grid logistic_grid = Nu0Grid::logistic_default();
    Nu0Grid probit_grid = Nu0Grid::probit_default();
    Model model = Model::Both;
    std::uint64_t base_seed = 0;
    std::size_t worker_count = 1;  // replicates run concurrently up to this

    void validate() const;
};

struct StudyRow {
    std::size_t replicate = 0;
    Model model = Model::Logistic;
    double nu0 = 0.0;
    SelectionMetrics metrics;
    std::uint64_t seed = 0;  // the fit seed for this (replicate, model)
    bool fit_failed = false;
};

struct StudyTable {
    std::vector<StudyRow> rows;  // ordered by (replicate, model, nu0)
    std::vector<std::pair<std::size_t, std::string>> failures;  // whole-replicate errors
};

// Grid-point aggregate over replicates; means and standard errors are taken
// over the defined entries only, with the contributing count reported.
struct SummaryRow {
    Model model = Model::Logistic;
    double nu0 = 0.0;
    double mean_tpr = 0.0, se_tpr = 0.0;
    double mean_tnr = 0.0, se_tnr = 0.0;
    double mean_ppv = 0.0, se_ppv = 0.0;
    double mean_npv = 0.0, se_npv = 0.0;
    std::size_t n_tpr = 0, n_tnr = 0, n_ppv = 0, n_npv = 0;
};

// Output is a pure function of (config, base_seed): replicate seeds are
// derived from the base seed by index, results land in per-replicate slots,
// and summaries reduce the sorted table — worker count and scheduling order
// never change a byte.
StudyTable run_study(const StudyConfig& cfg);

// One replicate's rows for the given model(s), exactly as run_study would
// produce them; the unit of work a resumable driver schedules and caches.
std::vector<StudyRow> run_study_replicate(const StudyConfig& cfg, std::size_t replicate,
                                          Model model);
std::vector<SummaryRow> summarize(const StudyTable& table);

// Budget for the MCMC side of an EMVS/SSVS comparison: a fixed sweep count, a
// fixed wall-time allowance, or the measured wall time of the EMVS path run
// inside the comparison itself.
struct SsvsBudget {
    enum class Kind { Sweeps, Seconds, MatchedSeconds } kind = Kind::MatchedSeconds;
    double seconds = 0.0;
    std::size_t sweeps = 0;

    static SsvsBudget from_sweeps(std::size_t count);
    static SsvsBudget from_seconds(double seconds);
    static SsvsBudget matched();
};

struct ComparisonRecord {
    std::vector<bool> emvs_selected;  // modal selected set along the path
    double emvs_best_nu0 = 0.0;       // first grid point attaining the modal set
    double emvs_path_seconds = 0.0;
    ssvs::SsvsResult ssvs;  // sweeps == 0 when the budget was zero
    double ssvs_budget_seconds = 0.0;  // resolved time budget (0 in sweep mode)
};

// Runs the logistic path on d, reduces it to the modal selected set (the most
// frequent selection along the grid; ties break toward the smaller nu0), then
// runs SSVS on the 0/1 recoding of d under the given budget. A zero budget
// yields a zero-sweep record. Time-budgeted runs are not bit-reproducible
// across machines; use sweep budgets when exact replay matters.
ComparisonRecord run_ssvs_comparison(const Dataset& d, const Nu0Grid& grid,
                                     const LogisticEmConfig& proto,
                                     const ssvs::SsvsConfig& ssvs_cfg, const SsvsBudget& budget);

}  // namespace emvs::harness
