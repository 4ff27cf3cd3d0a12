#include "emvs/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "emvs/datagen.hpp"
#include "emvs/errors.hpp"
#include "emvs/rng.hpp"

namespace emvs::harness {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

ssvs::SsvsResult zero_sweep_result(std::size_t p) {
    ssvs::SsvsResult r;
    r.gamma_inclusion_freq.assign(p, 0.0);
    r.selected.assign(p, false);
    return r;
}

std::vector<StudyRow> run_replicate(const StudyConfig& cfg, std::size_t r, bool do_logistic,
                                    bool do_probit) {
    const std::uint64_t seed_r = derive_seed(cfg.base_seed, r);

    datagen::DesignSpec dspec;
    dspec.n = cfg.n;
    dspec.p = cfg.p;
    dspec.p_gamma = cfg.p_gamma;
    dspec.rho = cfg.rho;
    dspec.seed = derive_seed(seed_r, 0);
    linalg::Matrix design = datagen::generate_design(dspec);

    const std::vector<double> beta_true =
        datagen::generate_replicate_betas(cfg.p, cfg.p_gamma, cfg.beta_max, derive_seed(seed_r, 1));

    datagen::ResponseSpec rspec;
    rspec.beta_true = beta_true;
    rspec.sigma_eps2 = cfg.sigma_eps2;
    rspec.coding = Coding::PlusMinusOne;
    Dataset d = datagen::generate_binary_response(design, rspec, derive_seed(seed_r, 2));
    d.x = standardize(d.x);

    std::vector<bool> truth(cfg.p);
    for (std::size_t j = 0; j < cfg.p; ++j) truth[j] = beta_true[j] != 0.0;

    std::vector<StudyRow> rows;
    auto append = [&](const PathResult& path, Model model, std::uint64_t fit_seed) {
        for (const PathPoint& pt : path.points) {
            StudyRow row;
            row.replicate = r;
            row.model = model;
            row.nu0 = pt.nu0;
            row.seed = fit_seed;
            row.fit_failed = pt.failed;
            if (!pt.failed) row.metrics = selection_metrics(pt.fit.selected, truth);
            rows.push_back(std::move(row));
        }
    };

    if (do_logistic) {
        LogisticEmConfig proto;
        proto.hyper.nu1 = 1000.0;
        proto.hyper.a = 1.0;
        proto.hyper.b = static_cast<double>(cfg.p);
        proto.sdca.seed = derive_seed(seed_r, 3);
        append(run_path(d, cfg.logistic_grid, proto), Model::Logistic, proto.sdca.seed);
    }
    if (do_probit) {
        const Dataset dz = recode(d, Coding::ZeroOne);
        ProbitEmConfig proto;
        proto.hyper.nu1 = 100.0;
        proto.hyper.a = 1.0;
        proto.hyper.b = static_cast<double>(cfg.p);
        proto.sdca.seed = derive_seed(seed_r, 4);
        append(run_path(dz, cfg.probit_grid, proto), Model::Probit, proto.sdca.seed);
    }
    return rows;
}

struct MetricAcc {
    std::vector<double> values;

    void add(double v, bool defined) {
        if (defined) values.push_back(v);
    }
    void finish(double& mean, double& se, std::size_t& count) const {
        count = values.size();
        mean = 0.0;
        se = 0.0;
        if (count == 0) return;
        double s = 0.0;
        for (double v : values) s += v;
        mean = s / static_cast<double>(count);
        if (count < 2) return;
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        se = std::sqrt(ss / static_cast<double>(count - 1)) /
             std::sqrt(static_cast<double>(count));
    }
};

}  // namespace

void Nu0Grid::validate(double nu1) const {
    if (values.empty()) throw SpecInvalid("nu0 grid is empty");
    double prev = 0.0;
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) throw SpecInvalid("nu0 grid values must be positive");
        if (v <= prev) throw SpecInvalid("nu0 grid must be strictly increasing");
        if (v >= nu1) throw SpecInvalid("nu0 grid values must stay below nu1");
        prev = v;
    }
}

Nu0Grid Nu0Grid::logistic_default() {
    Nu0Grid g;
    g.values.reserve(50);
    for (int k = 0; k < 50; ++k) g.values.push_back(static_cast<double>(102 + 2 * k) / 100.0);
    return g;
}

Nu0Grid Nu0Grid::probit_default() {
    Nu0Grid g;
    g.values.reserve(50);
    for (int k = 0; k < 50; ++k) g.values.push_back(static_cast<double>(2 + 2 * k) / 10000.0);
    return g;
}

SelectionMetrics selection_metrics(const std::vector<bool>& selected,
                                   const std::vector<bool>& truth) {
    if (selected.size() != truth.size())
        throw DimensionMismatch("selected/truth length mismatch");
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (std::size_t j = 0; j < truth.size(); ++j) {
        if (truth[j])
            ++(selected[j] ? tp : fn);
        else
            ++(selected[j] ? fp : tn);
    }
    SelectionMetrics m;
    auto rate = [](std::size_t num, std::size_t den, double& out, bool& defined) {
        defined = den > 0;
        out = defined ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
    };
    rate(tp, tp + fn, m.tpr, m.tpr_defined);
    rate(tn, tn + fp, m.tnr, m.tnr_defined);
    rate(tp, tp + fp, m.ppv, m.ppv_defined);
    rate(tn, tn + fn, m.npv, m.npv_defined);
    return m;
}

PathResult run_path(const Dataset& d, const Nu0Grid& grid,
                    const LogisticEmConfig& proto) {
    grid.validate(proto.hyper.nu1);
    PathResult out;
    out.points.reserve(grid.values.size());
    const auto start = Clock::now();
    for (double v : grid.values) {
        PathPoint pt;
        pt.nu0 = v;
        LogisticEmConfig cfg = proto;
        cfg.hyper.nu0 = v;
        try {
            pt.fit = fit_logistic(d, cfg);
        } catch (const std::exception& e) {
            pt.failed = true;
            pt.error = e.what();
        }
        out.points.push_back(std::move(pt));
    }
    out.wall_time = seconds_since(start);
    return out;
}

PathResult run_path(const Dataset& d, const Nu0Grid& grid, const ProbitEmConfig& proto) {
    grid.validate(proto.hyper.nu1);
    linalg::Matrix gram_local;
    ProbitEmConfig base = proto;
    // Wide designs use the n x n dual solve and never touch the Gram matrix.
    if (base.gram_cache == nullptr && d.p() <= d.n() &&
        base.beta_solver == ProbitBetaSolver::GRR) {
        gram_local = linalg::gram(d.x);
        base.gram_cache = &gram_local;
    }
    PathResult out;
    out.points.reserve(grid.values.size());
    const auto start = Clock::now();
    for (double v : grid.values) {
        PathPoint pt;
        pt.nu0 = v;
        ProbitEmConfig cfg = base;
        cfg.hyper.nu0 = v;
        try {
            pt.fit = fit_probit(d, cfg);
        } catch (const std::exception& e) {
            pt.failed = true;
            pt.error = e.what();
        }
        out.points.push_back(std::move(pt));
    }
    out.wall_time = seconds_since(start);
    return out;
}

void StudyConfig::validate() const {
    if (replicates < 1) throw SpecInvalid("replicates must be at least 1");
    if (!(beta_max >= 0.0) || !std::isfinite(beta_max))
        throw SpecInvalid("beta_max must be finite and nonnegative");
    if (!(sigma_eps2 >= 0.0) || !std::isfinite(sigma_eps2))
        throw SpecInvalid("sigma_eps2 must be finite and nonnegative");
    datagen::DesignSpec dspec;
    dspec.n = n;
    dspec.p = p;
    dspec.p_gamma = p_gamma;
    dspec.rho = rho;
    dspec.validate();
    if (model != Model::Probit) logistic_grid.validate(1000.0);
    if (model != Model::Logistic) probit_grid.validate(100.0);
}

std::vector<StudyRow> run_study_replicate(const StudyConfig& cfg, std::size_t replicate,
                                          Model model) {
    cfg.validate();
    if (replicate >= cfg.replicates) throw SpecInvalid("replicate index out of range");
    return run_replicate(cfg, replicate, model != Model::Probit, model != Model::Logistic);
}

StudyTable run_study(const StudyConfig& cfg) {
    cfg.validate();
    const bool do_logistic = cfg.model != Model::Probit;
    const bool do_probit = cfg.model != Model::Logistic;

    std::vector<std::vector<StudyRow>> slots(cfg.replicates);
    std::vector<std::pair<std::size_t, std::string>> failures;
    std::mutex failures_mutex;
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (;;) {
            const std::size_t r = next.fetch_add(1);
            if (r >= cfg.replicates) return;
            try {
                slots[r] = run_replicate(cfg, r, do_logistic, do_probit);
            } catch (const std::exception& e) {
                const std::lock_guard<std::mutex> lock(failures_mutex);
                failures.emplace_back(r, e.what());
            }
        }
    };

    std::size_t workers = cfg.worker_count;
    if (workers == 0) workers = std::max<unsigned>(1, std::thread::hardware_concurrency());
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }

    std::sort(failures.begin(), failures.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    StudyTable table;
    table.failures = std::move(failures);
    for (std::vector<StudyRow>& slot : slots)
        for (StudyRow& row : slot) table.rows.push_back(std::move(row));
    return table;
}

std::vector<SummaryRow> summarize(const StudyTable& table) {
    struct Acc {
        MetricAcc tpr, tnr, ppv, npv;
    };
    std::map<std::pair<int, double>, Acc> groups;
    for (const StudyRow& row : table.rows) {
        if (row.fit_failed) continue;
        Acc& acc = groups[{static_cast<int>(row.model), row.nu0}];
        acc.tpr.add(row.metrics.tpr, row.metrics.tpr_defined);
        acc.tnr.add(row.metrics.tnr, row.metrics.tnr_defined);
        acc.ppv.add(row.metrics.ppv, row.metrics.ppv_defined);
        acc.npv.add(row.metrics.npv, row.metrics.npv_defined);
    }
    std::vector<SummaryRow> out;
    out.reserve(groups.size());
    for (const auto& [key, acc] : groups) {
        SummaryRow s;
        s.model = static_cast<Model>(key.first);
        s.nu0 = key.second;
        acc.tpr.finish(s.mean_tpr, s.se_tpr, s.n_tpr);
        acc.tnr.finish(s.mean_tnr, s.se_tnr, s.n_tnr);
        acc.ppv.finish(s.mean_ppv, s.se_ppv, s.n_ppv);
        acc.npv.finish(s.mean_npv, s.se_npv, s.n_npv);
        out.push_back(s);
    }
    return out;
}

SsvsBudget SsvsBudget::from_sweeps(std::size_t count) {
    SsvsBudget b;
    b.kind = Kind::Sweeps;
    b.sweeps = count;
    return b;
}

SsvsBudget SsvsBudget::from_seconds(double seconds) {
    if (!(seconds >= 0.0) || !std::isfinite(seconds))
        throw SpecInvalid("time budget must be finite and nonnegative");
    SsvsBudget b;
    b.kind = Kind::Seconds;
    b.seconds = seconds;
    return b;
}

SsvsBudget SsvsBudget::matched() { return SsvsBudget{}; }

ComparisonRecord run_ssvs_comparison(const Dataset& d, const Nu0Grid& grid,
                                     const LogisticEmConfig& proto,
                                     const ssvs::SsvsConfig& ssvs_cfg, const SsvsBudget& budget) {
    validate_dataset(d);
    const Dataset dpm =
        d.coding == Coding::PlusMinusOne ? d : recode(d, Coding::PlusMinusOne);
    const Dataset dz = d.coding == Coding::ZeroOne ? d : recode(d, Coding::ZeroOne);

    ComparisonRecord rec;
    const PathResult path = run_path(dpm, grid, proto);
    rec.emvs_path_seconds = path.wall_time;

    // Modal selected set along the path; first occurrence wins ties.
    std::map<std::vector<bool>, std::pair<std::size_t, std::size_t>> counts;
    for (std::size_t i = 0; i < path.points.size(); ++i) {
        const PathPoint& pt = path.points[i];
        if (pt.failed) continue;
        auto it = counts.try_emplace(pt.fit.selected, 0, i).first;
        ++it->second.first;
    }
    std::size_t best_count = 0, best_index = 0;
    for (const auto& [sel, cf] : counts) {
        if (cf.first > best_count || (cf.first == best_count && cf.second < best_index)) {
            best_count = cf.first;
            best_index = cf.second;
            rec.emvs_selected = sel;
        }
    }
    if (best_count > 0) rec.emvs_best_nu0 = path.points[best_index].nu0;

    double seconds = 0.0;
    switch (budget.kind) {
        case SsvsBudget::Kind::Sweeps: {
            if (budget.sweeps == 0) {
                rec.ssvs = zero_sweep_result(d.p());
                return rec;
            }
            ssvs::SsvsConfig cfg = ssvs_cfg;
            cfg.iterations = budget.sweeps;
            if (cfg.burn_in >= cfg.iterations) cfg.burn_in = cfg.iterations - 1;
            rec.ssvs = ssvs::run_ssvs_probit(dz, cfg);
            return rec;
        }
        case SsvsBudget::Kind::Seconds:
            seconds = budget.seconds;
            break;
        case SsvsBudget::Kind::MatchedSeconds:
            seconds = path.wall_time;
            break;
    }
    if (seconds <= 0.0) {
        rec.ssvs = zero_sweep_result(d.p());
        return rec;
    }
    rec.ssvs_budget_seconds = seconds;
    rec.ssvs = ssvs::run_ssvs_probit_for(dz, ssvs_cfg, seconds);
    return rec;
}

}  // namespace emvs::harness
