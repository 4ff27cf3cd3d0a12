#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "emvs/linalg.hpp"

// Shared domain types: datasets with a declared label coding, the prior
// configuration, and the EM iterate / fit-result records every engine
// produces.
namespace emvs {

enum class Coding { PlusMinusOne, ZeroOne };

struct Dataset {
    linalg::Matrix x;    // n x p design
    std::vector<int> y;  // labels, interpreted per coding
    Coding coding = Coding::PlusMinusOne;

    std::size_t n() const { return x.rows; }
    std::size_t p() const { return x.cols; }
};

struct SpikeSlabHyper {
    double nu0 = 1.0;      // spike variance scale
    double nu1 = 1000.0;   // slab variance scale
    double a = 1.0;        // Beta prior on the inclusion rate
    double b = 1.0;
    double nu = 1.0;       // inverse-gamma prior on sigma^2: IG(nu/2, nu*lambda/2)
    double lambda = 0.001;

    void validate() const;  // throws SpecInvalid unless 0 < nu0 < nu1 etc.
};

struct EmState {
    std::vector<double> beta;
    double sigma = 1.0;
    double theta = 0.5;
    std::vector<double> p_star;  // per-coordinate inclusion probabilities
    std::vector<double> d_star;  // per-coordinate expected precisions
    std::size_t iteration = 0;
};

struct FitResult {
    EmState state;
    bool converged = false;
    std::vector<double> objective_trace;  // one entry per EM iterate, init included
    std::vector<bool> selected;           // p_star > 0.5
    double wall_time = 0.0;               // seconds
    std::uint64_t seed = 0;
    std::size_t solver_clamp_events = 0;  // dual-feasibility clamps, summed over M-steps
};

// Column means and sds (n-1 denominator) of a training design; kept so
// held-out data can be standardized with the training statistics.
struct StandardizeStats {
    std::vector<double> mean;
    std::vector<double> sd;
};

StandardizeStats standardize_stats(const linalg::Matrix& x_raw);
linalg::Matrix apply_standardize(const linalg::Matrix& x_raw, const StandardizeStats& stats);
linalg::Matrix standardize(const linalg::Matrix& x_raw);

// Returns d unchanged after checking every Dataset invariant (shape, label
// coding, finiteness).  Throws; never mutates.
const Dataset& validate_dataset(const Dataset& d);

// Relabels -1 <-> 0 (+1 stays +1); involution across the two codings.
Dataset recode(const Dataset& d, Coding target);

}  // namespace emvs
