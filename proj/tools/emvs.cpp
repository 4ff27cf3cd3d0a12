// Command-line front end: simulate / fit / predict / study / ssvs.
//
// Exit codes: 0 success, 2 bad usage or invalid data, 3 I/O failure,
// 4 numerical failure.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "emvs/datagen.hpp"
#include "emvs/errors.hpp"
#include "emvs/harness.hpp"
#include "emvs/io.hpp"
#include "emvs/logistic.hpp"
#include "emvs/probit.hpp"
#include "emvs/rng.hpp"
#include "emvs/ssvs.hpp"
#include "emvs/types.hpp"

namespace {

namespace fs = std::filesystem;
using emvs::Coding;
using emvs::Dataset;

int exit_code_for(const emvs::Error& e) {
    switch (e.kind()) {
        case emvs::ErrorKind::Invalid: return 2;
        case emvs::ErrorKind::Io: return 3;
        case emvs::ErrorKind::Numeric: return 4;
    }
    return 4;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw emvs::SpecInvalid("empty entry in numeric list '" + s + "'");
        char* end = nullptr;
        const double v = std::strtod(cur.c_str(), &end);
        if (end != cur.c_str() + cur.size())
            throw emvs::SpecInvalid("cannot parse '" + cur + "' in numeric list");
        out.push_back(v);
        cur.clear();
    };
    for (char c : s) {
        if (c == ',')
            flush();
        else if (!std::isspace(static_cast<unsigned char>(c)))
            cur.push_back(c);
    }
    flush();
    return out;
}

// Grid syntax: "default" (the model's published grid), "start:step:end"
// (inclusive), or a comma-separated list.
emvs::harness::Nu0Grid parse_grid(const std::string& s, bool logistic_model) {
    if (s == "default")
        return logistic_model ? emvs::harness::Nu0Grid::logistic_default()
                              : emvs::harness::Nu0Grid::probit_default();
    emvs::harness::Nu0Grid grid;
    const std::size_t c1 = s.find(':');
    if (c1 != std::string::npos) {
        const std::size_t c2 = s.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw emvs::SpecInvalid("grid range needs start:step:end, got '" + s + "'");
        const double start = parse_double_list(s.substr(0, c1))[0];
        const double step = parse_double_list(s.substr(c1 + 1, c2 - c1 - 1))[0];
        const double end = parse_double_list(s.substr(c2 + 1))[0];
        if (!(step > 0.0)) throw emvs::SpecInvalid("grid step must be positive");
        for (int k = 0;; ++k) {
            const double v = start + k * step;
            if (v > end + 1e-12 * std::max(1.0, std::abs(end))) break;
            grid.values.push_back(v);
        }
        return grid;
    }
    grid.values = parse_double_list(s);
    return grid;
}

std::string selected_set_string(const std::vector<bool>& selected) {
    std::string out = "{";
    bool first = true;
    for (std::size_t j = 0; j < selected.size(); ++j) {
        if (!selected[j]) continue;
        if (!first) out += ",";
        out += std::to_string(j + 1);  // 1-based, matching column names x1..xp
        first = false;
    }
    out += "}";
    return out;
}

Dataset load_dataset(const std::string& data_path, const std::string& labels_path,
                     const std::string& label_col) {
    const emvs::io::Csv csv = emvs::io::read_csv(data_path);
    if (labels_path.empty()) return emvs::io::dataset_from_csv(csv, label_col);

    const emvs::io::Csv lab = emvs::io::read_csv(labels_path);
    if (lab.values.cols != 1)
        throw emvs::SpecInvalid(labels_path + " must have exactly one column of labels");
    if (lab.values.rows != csv.values.rows)
        throw emvs::DimensionMismatch("label file row count does not match the data file");
    Dataset d;
    d.x = csv.values;
    d.y.resize(lab.values.rows);
    bool has_negative = false;
    for (std::size_t i = 0; i < lab.values.rows; ++i) {
        const double v = lab.values(i, 0);
        if (v != -1.0 && v != 0.0 && v != 1.0)
            throw emvs::SpecInvalid("labels must be -1/0/1, got " + emvs::io::format_double(v) +
                                    " at row " + std::to_string(i));
        if (v == -1.0) has_negative = true;
        d.y[i] = static_cast<int>(v);
    }
    d.coding = has_negative ? Coding::PlusMinusOne : Coding::ZeroOne;
    emvs::validate_dataset(d);
    return d;
}

std::vector<std::string> feature_header(std::size_t p) {
    std::vector<std::string> h(p);
    for (std::size_t j = 0; j < p; ++j) h[j] = "x" + std::to_string(j + 1);
    return h;
}

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
    std::size_t n = 100, p = 1000, p_gamma = 10;
    double rho = 0.6, sigma_eps2 = 3.0;
    std::string beta_list;
    double beta_max = -1.0;  // <0 = not set
    std::uint64_t seed = 0;
    std::string coding = "pm1";
    std::string out_dir = ".";
};

int cmd_simulate(const SimulateOpts& o) {
    emvs::datagen::DesignSpec dspec;
    dspec.n = o.n;
    dspec.p = o.p;
    dspec.p_gamma = o.p_gamma;
    dspec.rho = o.rho;
    dspec.seed = emvs::derive_seed(o.seed, 0);
    const emvs::linalg::Matrix design = emvs::datagen::generate_design(dspec);

    std::vector<double> beta_true(o.p, 0.0);
    if (!o.beta_list.empty()) {
        const std::vector<double> head = parse_double_list(o.beta_list);
        if (head.size() > o.p)
            throw emvs::SpecInvalid("--beta has more entries than columns");
        std::copy(head.begin(), head.end(), beta_true.begin());
    } else if (o.beta_max >= 0.0) {
        beta_true = emvs::datagen::generate_replicate_betas(o.p, o.p_gamma, o.beta_max,
                                                            emvs::derive_seed(o.seed, 1));
    }

    emvs::datagen::ResponseSpec rspec;
    rspec.beta_true = beta_true;
    rspec.sigma_eps2 = o.sigma_eps2;
    rspec.coding = o.coding == "pm1" ? Coding::PlusMinusOne : Coding::ZeroOne;
    const Dataset d =
        emvs::datagen::generate_binary_response(design, rspec, emvs::derive_seed(o.seed, 2));

    fs::create_directories(o.out_dir);
    emvs::io::write_csv(o.out_dir + "/design.csv", feature_header(o.p), design);

    emvs::linalg::Matrix truth(o.p, 1);
    for (std::size_t j = 0; j < o.p; ++j) truth(j, 0) = beta_true[j];
    emvs::io::write_csv(o.out_dir + "/truth.csv", {"beta_true"}, truth);

    emvs::linalg::Matrix labels(o.n, 1);
    std::size_t positives = 0;
    for (std::size_t i = 0; i < o.n; ++i) {
        labels(i, 0) = d.y[i];
        if (d.y[i] == 1) ++positives;
    }
    emvs::io::write_csv(o.out_dir + "/labels.csv", {"y"}, labels);

    std::cout << "simulate: seed=" << o.seed << " n=" << o.n << " p=" << o.p
              << " p_gamma=" << o.p_gamma << " rho=" << o.rho << " positives=" << positives
              << " -> " << o.out_dir << "/{design,truth,labels}.csv\n";
    return 0;
}

// --------------------------------------------------------------------- fit

struct FitOpts {
    std::string data, labels, label_col = "y";
    std::string model = "logistic";
    double nu0 = 0.0;
    bool nu0_set = false;
    std::string grid;
    double nu1 = 0.0;
    bool nu1_set = false;
    double a = 1.0, b = -1.0;  // b < 0 = default to p
    double lambda = 0.001, nu = 1.0;
    double theta0 = 0.5, sigma0 = 1.0, tol = 1e-6;
    std::size_t max_iter = 100;
    std::size_t sdca_picks = 0;  // 0 = model default
    double sdca_gap = 1e-8;
    std::string penalty_mode = "paper";
    std::string beta_solver = "grr";
    std::uint64_t seed = 0;
    bool no_standardize = false;
    std::string out = "fit.json";
    std::string stats_out;
    std::string path_out = "path.csv";
};

emvs::SpikeSlabHyper make_hyper(const FitOpts& o, bool logistic_model, std::size_t p,
                                double nu0) {
    emvs::SpikeSlabHyper h;
    h.nu0 = nu0;
    h.nu1 = o.nu1_set ? o.nu1 : (logistic_model ? 1000.0 : 100.0);
    h.a = o.a;
    h.b = o.b < 0.0 ? static_cast<double>(p) : o.b;
    h.lambda = o.lambda;
    h.nu = o.nu;
    return h;
}

void write_path_csv(const std::string& path, const emvs::harness::PathResult& result,
                    std::size_t p) {
    std::size_t ok = 0;
    for (const auto& pt : result.points)
        if (!pt.failed) ++ok;
    emvs::linalg::Matrix rows(ok * p, 5);
    std::size_t r = 0;
    for (const auto& pt : result.points) {
        if (pt.failed) continue;
        for (std::size_t j = 0; j < p; ++j) {
            rows(r, 0) = pt.nu0;
            rows(r, 1) = static_cast<double>(j + 1);
            rows(r, 2) = pt.fit.state.beta[j];
            rows(r, 3) = pt.fit.state.p_star[j];
            rows(r, 4) = pt.fit.selected[j] ? 1.0 : 0.0;
            ++r;
        }
    }
    emvs::io::write_csv(path, {"nu0", "j", "beta", "p_star", "selected"}, rows);
}

int cmd_fit(const FitOpts& o) {
    if (!o.nu0_set && o.grid.empty())
        throw emvs::SpecInvalid("pass --nu0 for a single fit or --nu0-grid for a path");
    const bool logistic_model = o.model == "logistic";

    Dataset d = load_dataset(o.data, o.labels, o.label_col);
    d = emvs::recode(d, logistic_model ? Coding::PlusMinusOne : Coding::ZeroOne);

    emvs::StandardizeStats stats;
    if (o.no_standardize) {
        stats.mean.assign(d.p(), 0.0);
        stats.sd.assign(d.p(), 1.0);
    } else {
        stats = emvs::standardize_stats(d.x);
        d.x = emvs::apply_standardize(d.x, stats);
    }
    std::string stats_path = o.stats_out;
    if (stats_path.empty())
        stats_path = fs::path(o.out).replace_extension().string() + "_stats.csv";
    emvs::io::write_stats_csv(stats_path, stats);

    auto report = [&](const emvs::FitResult& fit, double nu0_used) {
        std::size_t k = 0;
        for (bool s : fit.selected)
            if (s) ++k;
        std::cout << "fit: model=" << o.model << " nu0=" << emvs::io::format_double(nu0_used)
                  << " converged=" << (fit.converged ? "yes" : "no")
                  << " iterations=" << fit.state.iteration << " selected=" << k
                  << " wall_time_s=" << emvs::io::format_double(fit.wall_time) << "\n";
    };

    if (logistic_model) {
        emvs::LogisticEmConfig cfg;
        cfg.hyper = make_hyper(o, true, d.p(), o.nu0_set ? o.nu0 : 1.0);
        cfg.max_em_iterations = o.max_iter;
        cfg.sdca.max_picks = o.sdca_picks != 0 ? o.sdca_picks : 5000;
        cfg.sdca.gap_tolerance = o.sdca_gap;
        cfg.sdca.seed = o.seed;
        cfg.theta_init = o.theta0;
        cfg.sigma_init = o.sigma0;
        cfg.convergence_tol = o.tol;
        cfg.penalty_mode =
            o.penalty_mode == "paper" ? emvs::PenaltyMode::PaperLiteral
                                      : emvs::PenaltyMode::Q1Consistent;
        if (o.nu0_set) {
            const emvs::FitResult fit = emvs::fit_logistic(d, cfg);
            emvs::io::write_fit_json(o.out,
                                     emvs::io::make_fit_document("logistic", cfg.hyper, fit));
            report(fit, o.nu0);
            return 0;
        }
        const emvs::harness::Nu0Grid grid = parse_grid(o.grid, true);
        const emvs::harness::PathResult path = emvs::harness::run_path(d, grid, cfg);
        write_path_csv(o.path_out, path, d.p());
        const emvs::harness::PathPoint* last_ok = nullptr;
        for (const auto& pt : path.points) {
            if (pt.failed)
                std::cerr << "warning: nu0=" << emvs::io::format_double(pt.nu0)
                          << " failed: " << pt.error << "\n";
            else
                last_ok = &pt;
        }
        if (last_ok == nullptr) throw emvs::SingularSystem("every grid point failed");
        emvs::SpikeSlabHyper h = cfg.hyper;
        h.nu0 = last_ok->nu0;
        emvs::io::write_fit_json(o.out, emvs::io::make_fit_document("logistic", h, last_ok->fit));
        report(last_ok->fit, last_ok->nu0);
        std::cout << "path: " << path.points.size() << " grid points, wall_time_s="
                  << emvs::io::format_double(path.wall_time) << " -> " << o.path_out << "\n";
        return 0;
    }

    emvs::ProbitEmConfig cfg;
    cfg.hyper = make_hyper(o, false, d.p(), o.nu0_set ? o.nu0 : 0.001);
    cfg.max_em_iterations = o.max_iter;
    cfg.sdca.max_picks = o.sdca_picks != 0 ? o.sdca_picks : 6000;
    cfg.sdca.gap_tolerance = o.sdca_gap;
    cfg.sdca.seed = o.seed;
    cfg.theta_init = o.theta0;
    cfg.convergence_tol = o.tol;
    cfg.beta_solver =
        o.beta_solver == "grr" ? emvs::ProbitBetaSolver::GRR : emvs::ProbitBetaSolver::SDCA;
    if (o.nu0_set) {
        const emvs::FitResult fit = emvs::fit_probit(d, cfg);
        emvs::io::write_fit_json(o.out, emvs::io::make_fit_document("probit", cfg.hyper, fit));
        report(fit, o.nu0);
        return 0;
    }
    const emvs::harness::Nu0Grid grid = parse_grid(o.grid, false);
    const emvs::harness::PathResult path = emvs::harness::run_path(d, grid, cfg);
    write_path_csv(o.path_out, path, d.p());
    const emvs::harness::PathPoint* last_ok = nullptr;
    for (const auto& pt : path.points) {
        if (pt.failed)
            std::cerr << "warning: nu0=" << emvs::io::format_double(pt.nu0)
                      << " failed: " << pt.error << "\n";
        else
            last_ok = &pt;
    }
    if (last_ok == nullptr) throw emvs::SingularSystem("every grid point failed");
    emvs::SpikeSlabHyper h = cfg.hyper;
    h.nu0 = last_ok->nu0;
    emvs::io::write_fit_json(o.out, emvs::io::make_fit_document("probit", h, last_ok->fit));
    report(last_ok->fit, last_ok->nu0);
    std::cout << "path: " << path.points.size() << " grid points, wall_time_s="
              << emvs::io::format_double(path.wall_time) << " -> " << o.path_out << "\n";
    return 0;
}

// ----------------------------------------------------------------- predict

struct PredictOpts {
    std::string fit, data, label_col, stats;
    double cutoff = 0.5;
    std::string out = "predictions.csv";
};

int cmd_predict(const PredictOpts& o) {
    const emvs::io::FitDocument doc = emvs::io::read_fit_json(o.fit);
    const emvs::io::Csv csv = emvs::io::read_csv(o.data);

    std::size_t label_idx = csv.header.size();
    if (!o.label_col.empty()) {
        for (std::size_t j = 0; j < csv.header.size(); ++j)
            if (csv.header[j] == o.label_col) label_idx = j;
        if (label_idx == csv.header.size())
            throw emvs::SpecInvalid("no column named '" + o.label_col + "' in " + o.data);
    }
    const bool have_truth = label_idx < csv.header.size();
    const std::size_t n = csv.values.rows;
    const std::size_t p = csv.header.size() - (have_truth ? 1 : 0);
    if (p != doc.beta.size())
        throw emvs::DimensionMismatch("data has " + std::to_string(p) +
                                      " feature columns, fit has " +
                                      std::to_string(doc.beta.size()));

    emvs::linalg::Matrix x(n, p);
    std::vector<int> truth(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t out_j = 0;
        for (std::size_t j = 0; j < csv.header.size(); ++j) {
            if (have_truth && j == label_idx) {
                truth[i] = csv.values(i, j) == 1.0 ? 1 : 0;
                continue;
            }
            x(i, out_j++) = csv.values(i, j);
        }
    }
    if (!o.stats.empty()) {
        const emvs::StandardizeStats stats = emvs::io::read_stats_csv(o.stats);
        x = emvs::apply_standardize(x, stats);
    }

    std::vector<double> prob;
    if (doc.model == "logistic")
        prob = emvs::predict_logistic(doc.beta, x);
    else if (doc.model == "probit")
        prob = emvs::predict_probit(doc.beta, x);
    else
        throw emvs::SpecInvalid("fit record has unknown model '" + doc.model + "'");

    emvs::linalg::Matrix outm(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        outm(i, 0) = prob[i];
        outm(i, 1) = prob[i] >= o.cutoff ? 1.0 : 0.0;
    }
    emvs::io::write_csv(o.out, {"prob", "class"}, outm);

    if (have_truth) {
        std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool pos = prob[i] >= o.cutoff;
            if (truth[i] == 1)
                ++(pos ? tp : fn);
            else
                ++(pos ? fp : tn);
        }
        std::cout << "predict: correct " << (tp + tn) << " of " << n << " at cutoff " << o.cutoff
                  << " (tp=" << tp << " fp=" << fp << " tn=" << tn << " fn=" << fn << ")\n";
    } else {
        std::cout << "predict: wrote " << n << " rows -> " << o.out << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------- study

struct StudyOpts {
    emvs::harness::StudyConfig cfg;
    std::string model = "both";
    std::string out_dir = "study_out";
};

int cmd_study(const StudyOpts& o) {
    emvs::harness::StudyConfig cfg = o.cfg;
    cfg.model = emvs::io::model_from_name(o.model);
    cfg.validate();

    fs::create_directories(fs::path(o.out_dir) / "cells");
    const std::string manifest_path = (fs::path(o.out_dir) / "manifest.txt").string();
    std::set<std::string> done = emvs::io::read_manifest(manifest_path);

    struct Cell {
        std::size_t replicate;
        emvs::harness::Model model;
    };
    std::vector<Cell> cells;
    for (std::size_t r = 0; r < cfg.replicates; ++r) {
        if (cfg.model != emvs::harness::Model::Probit)
            cells.push_back({r, emvs::harness::Model::Logistic});
        if (cfg.model != emvs::harness::Model::Logistic)
            cells.push_back({r, emvs::harness::Model::Probit});
    }
    auto cell_key = [](const Cell& c) {
        return "r" + std::to_string(c.replicate) + ":" + emvs::io::model_name(c.model);
    };
    auto cell_path = [&](const Cell& c) {
        return (fs::path(o.out_dir) / "cells" /
                ("r" + std::to_string(c.replicate) + "_" + emvs::io::model_name(c.model) +
                 ".csv"))
            .string();
    };

    std::vector<std::vector<emvs::harness::StudyRow>> slots(cells.size());
    std::vector<std::pair<std::size_t, std::string>> failures;
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> completed{0};
    std::mutex sink_mutex;  // manifest appends and progress lines

    auto work = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= cells.size()) return;
            const Cell& cell = cells[c];
            const std::string key = cell_key(cell);
            try {
                if (done.count(key) != 0) {
                    slots[c] = emvs::io::read_study_csv(cell_path(cell));
                } else {
                    slots[c] =
                        emvs::harness::run_study_replicate(cfg, cell.replicate, cell.model);
                    emvs::io::write_study_csv(cell_path(cell), slots[c]);
                    const std::lock_guard<std::mutex> lock(sink_mutex);
                    emvs::io::append_manifest(manifest_path, key);
                }
            } catch (const std::exception& e) {
                const std::lock_guard<std::mutex> lock(sink_mutex);
                failures.emplace_back(c, e.what());
            }
            const std::size_t done_count = completed.fetch_add(1) + 1;
            const std::lock_guard<std::mutex> lock(sink_mutex);
            std::cerr << "study: " << key << " done (" << done_count << "/" << cells.size()
                      << ")\n";
        }
    };

    std::size_t workers = cfg.worker_count;
    if (workers == 0) workers = std::max<unsigned>(1, std::thread::hardware_concurrency());
    workers = std::min(workers, cells.size());
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }

    emvs::harness::StudyTable table;
    for (std::size_t c = 0; c < cells.size(); ++c)
        for (emvs::harness::StudyRow& row : slots[c]) table.rows.push_back(std::move(row));
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const emvs::harness::StudyRow& a, const emvs::harness::StudyRow& b) {
                         if (a.replicate != b.replicate) return a.replicate < b.replicate;
                         return static_cast<int>(a.model) < static_cast<int>(b.model);
                     });

    emvs::io::write_study_csv((fs::path(o.out_dir) / "study.csv").string(), table.rows);
    emvs::io::write_summary_csv((fs::path(o.out_dir) / "summary.csv").string(),
                                emvs::harness::summarize(table));

    for (const auto& [c, msg] : failures)
        std::cerr << "study: cell " << cell_key(cells[c]) << " failed: " << msg << "\n";
    std::cout << "study: " << table.rows.size() << " rows -> " << o.out_dir
              << "/study.csv (failures: " << failures.size() << ")\n";
    return 0;
}

// -------------------------------------------------------------------- ssvs

struct SsvsOpts {
    std::string data, labels, label_col = "y";
    double nu1 = 1000.0, a = 1.0, b = 1.0;
    std::size_t sweeps = 2000, burn_in = 500, metropolis = 1000;
    double seconds = -1.0;
    bool matched = false;
    std::uint64_t seed = 0;
    bool no_standardize = false;
    std::string out = "ssvs_freq.csv";
};

int cmd_ssvs(const SsvsOpts& o) {
    Dataset d = load_dataset(o.data, o.labels, o.label_col);
    if (!o.no_standardize) d.x = emvs::standardize(d.x);

    emvs::ssvs::SsvsConfig cfg;
    cfg.nu1 = o.nu1;
    cfg.a = o.a;
    cfg.b = o.b;
    cfg.iterations = o.sweeps;
    cfg.burn_in = o.sweeps > 0 ? std::min(o.burn_in, o.sweeps - 1) : 0;
    cfg.metropolis_steps_per_sweep = o.metropolis;
    cfg.seed = o.seed;

    emvs::ssvs::SsvsResult result;
    if (o.matched) {
        emvs::LogisticEmConfig proto;
        proto.hyper.nu1 = 1000.0;
        proto.hyper.a = 1.0;
        proto.hyper.b = static_cast<double>(d.p());
        proto.sdca.seed = o.seed;
        const emvs::harness::ComparisonRecord rec = emvs::harness::run_ssvs_comparison(
            d, emvs::harness::Nu0Grid::logistic_default(), proto, cfg,
            emvs::harness::SsvsBudget::matched());
        std::cout << "emvs: path_wall_time_s=" << emvs::io::format_double(rec.emvs_path_seconds)
                  << " best_nu0=" << emvs::io::format_double(rec.emvs_best_nu0)
                  << " selected=" << selected_set_string(rec.emvs_selected) << "\n";
        result = rec.ssvs;
    } else if (o.seconds >= 0.0) {
        const Dataset dz = emvs::recode(d, Coding::ZeroOne);
        result = o.seconds == 0.0
                     ? emvs::ssvs::SsvsResult{}
                     : emvs::ssvs::run_ssvs_probit_for(dz, cfg, o.seconds);
        if (o.seconds == 0.0) {
            result.gamma_inclusion_freq.assign(d.p(), 0.0);
            result.selected.assign(d.p(), false);
        }
    } else if (o.sweeps == 0) {
        result.gamma_inclusion_freq.assign(d.p(), 0.0);
        result.selected.assign(d.p(), false);
    } else {
        const Dataset dz = emvs::recode(d, Coding::ZeroOne);
        result = emvs::ssvs::run_ssvs_probit(dz, cfg);
    }

    emvs::io::write_ssvs_csv(o.out, result);
    std::cout << "ssvs: sweeps=" << result.sweeps << " accepted=" << result.accepted << "/"
              << result.proposed
              << " acceptance=" << emvs::io::format_double(result.acceptance_rate)
              << " selected=" << selected_set_string(result.selected) << " -> " << o.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spike-and-slab EM variable selection for binary-response regression"};
    app.require_subcommand(1);

    SimulateOpts sim;
    CLI::App* c_sim = app.add_subcommand("simulate", "Generate a correlated synthetic dataset");
    c_sim->set_config("--config");
    c_sim->add_option("--n", sim.n, "Observations");
    c_sim->add_option("--p", sim.p, "Features");
    c_sim->add_option("--p-gamma", sim.p_gamma, "Related (signal-bearing) features");
    c_sim->add_option("--rho", sim.rho, "Target max related/unrelated correlation, in [0,1)");
    c_sim->add_option("--sigma-eps2", sim.sigma_eps2, "Latent noise variance");
    c_sim->add_option("--beta", sim.beta_list, "Leading true coefficients, e.g. \"1,2,3\"");
    c_sim->add_option("--beta-max", sim.beta_max,
                      "Draw p-gamma coefficients from U(-beta-max, beta-max) instead");
    c_sim->add_option("--seed", sim.seed, "RNG seed");
    c_sim->add_option("--coding", sim.coding, "Label coding")
        ->check(CLI::IsMember({"pm1", "01"}));
    c_sim->add_option("--out-dir", sim.out_dir, "Output directory");

    FitOpts fit;
    CLI::App* c_fit = app.add_subcommand("fit", "Fit one model at a nu0 or over a nu0 grid");
    c_fit->set_config("--config");
    c_fit->add_option("--data", fit.data, "Design CSV (header row required)")->required();
    c_fit->add_option("--labels", fit.labels, "Separate one-column label CSV");
    c_fit->add_option("--label-col", fit.label_col, "Label column name inside --data");
    c_fit->add_option("--model", fit.model, "Model")
        ->check(CLI::IsMember({"logistic", "probit"}));
    CLI::Option* fit_nu0 = c_fit->add_option("--nu0", fit.nu0, "Spike variance (single fit)");
    CLI::Option* fit_grid = c_fit->add_option(
        "--nu0-grid", fit.grid, "Grid: \"default\", \"start:step:end\", or a comma list");
    fit_nu0->excludes(fit_grid);
    CLI::Option* fit_nu1 =
        c_fit->add_option("--nu1", fit.nu1, "Slab variance (default 1000 logistic, 100 probit)");
    c_fit->add_option("--a", fit.a, "Beta prior a");
    c_fit->add_option("--b", fit.b, "Beta prior b (default: p)");
    c_fit->add_option("--lambda", fit.lambda, "Inverse-gamma prior scale");
    c_fit->add_option("--nu", fit.nu, "Inverse-gamma prior shape");
    c_fit->add_option("--theta0", fit.theta0, "Initial inclusion rate");
    c_fit->add_option("--sigma0", fit.sigma0, "Initial sigma (logistic only)");
    c_fit->add_option("--tol", fit.tol, "EM convergence tolerance (inf-norm beta change)");
    c_fit->add_option("--max-iter", fit.max_iter, "EM iteration cap");
    c_fit->add_option("--sdca-picks", fit.sdca_picks,
                      "Solver coordinate picks per M-step (default 5000/6000)");
    c_fit->add_option("--sdca-gap", fit.sdca_gap, "Solver duality-gap early-exit tolerance");
    c_fit->add_option("--penalty-mode", fit.penalty_mode, "paper or q1 (logistic)")
        ->check(CLI::IsMember({"paper", "q1"}));
    c_fit->add_option("--beta-solver", fit.beta_solver, "grr or sdca (probit)")
        ->check(CLI::IsMember({"grr", "sdca"}));
    c_fit->add_option("--seed", fit.seed, "RNG seed");
    c_fit->add_flag("--no-standardize", fit.no_standardize, "Skip column standardization");
    c_fit->add_option("--out", fit.out, "Fit JSON path");
    c_fit->add_option("--stats-out", fit.stats_out,
                      "Standardization stats CSV (default: <out>_stats.csv)");
    c_fit->add_option("--path-out", fit.path_out, "Path CSV (grid mode)");

    PredictOpts pred;
    CLI::App* c_pred = app.add_subcommand("predict", "Score new data with a saved fit");
    c_pred->set_config("--config");
    c_pred->add_option("--fit", pred.fit, "Fit JSON from the fit command")->required();
    c_pred->add_option("--data", pred.data, "New-data CSV")->required();
    c_pred->add_option("--label-col", pred.label_col,
                       "Truth column in --data (prints a confusion summary)");
    c_pred->add_option("--standardize-with", pred.stats, "Training stats CSV");
    c_pred->add_option("--cutoff", pred.cutoff, "Classification cutoff");
    c_pred->add_option("--out", pred.out, "Predictions CSV");

    StudyOpts study;
    CLI::App* c_study = app.add_subcommand("study", "Replicate selection-accuracy study");
    c_study->set_config("--config");
    c_study->add_option("--replicates", study.cfg.replicates, "Replicate count");
    c_study->add_option("--n", study.cfg.n, "Observations per replicate");
    c_study->add_option("--p", study.cfg.p, "Features per replicate");
    c_study->add_option("--p-gamma", study.cfg.p_gamma, "Related features");
    c_study->add_option("--rho", study.cfg.rho, "Design correlation target");
    c_study->add_option("--sigma-eps2", study.cfg.sigma_eps2, "Latent noise variance");
    c_study->add_option("--beta-max", study.cfg.beta_max, "Coefficient magnitude bound")
        ->check(CLI::NonNegativeNumber);
    c_study->add_option("--model", study.model, "logistic, probit, or both")
        ->check(CLI::IsMember({"logistic", "probit", "both"}));
    c_study->add_option("--seed", study.cfg.base_seed, "Base seed");
    c_study->add_option("--workers", study.cfg.worker_count,
                        "Concurrent replicate workers (0 = hardware)")
        ->envname("EMVS_BIN_THREADS");
    c_study->add_option("--out-dir", study.out_dir, "Output directory (resumable)");

    SsvsOpts ssvs;
    CLI::App* c_ssvs = app.add_subcommand("ssvs", "MCMC baseline on a dataset");
    c_ssvs->set_config("--config");
    c_ssvs->add_option("--data", ssvs.data, "Design CSV")->required();
    c_ssvs->add_option("--labels", ssvs.labels, "Separate one-column label CSV");
    c_ssvs->add_option("--label-col", ssvs.label_col, "Label column name inside --data");
    c_ssvs->add_option("--nu1", ssvs.nu1, "Slab variance");
    c_ssvs->add_option("--a", ssvs.a, "Beta-binomial a");
    c_ssvs->add_option("--b", ssvs.b, "Beta-binomial b");
    CLI::Option* s_sweeps = c_ssvs->add_option("--sweeps", ssvs.sweeps, "Sweep budget");
    CLI::Option* s_seconds =
        c_ssvs->add_option("--seconds", ssvs.seconds, "Wall-time budget in seconds");
    CLI::Option* s_matched = c_ssvs->add_flag(
        "--matched", ssvs.matched, "Budget = wall time of a default logistic path on this data");
    s_sweeps->excludes(s_seconds);
    s_sweeps->excludes(s_matched);
    s_seconds->excludes(s_matched);
    c_ssvs->add_option("--burn-in", ssvs.burn_in, "Sweeps discarded before counting");
    c_ssvs->add_option("--metropolis-steps", ssvs.metropolis, "Gamma proposals per sweep");
    c_ssvs->add_option("--seed", ssvs.seed, "RNG seed");
    c_ssvs->add_flag("--no-standardize", ssvs.no_standardize, "Skip column standardization");
    c_ssvs->add_option("--out", ssvs.out, "Inclusion-frequency CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    fit.nu0_set = fit_nu0->count() > 0;
    fit.nu1_set = fit_nu1->count() > 0;

    try {
        if (c_sim->parsed()) return cmd_simulate(sim);
        if (c_fit->parsed()) return cmd_fit(fit);
        if (c_pred->parsed()) return cmd_predict(pred);
        if (c_study->parsed()) return cmd_study(study);
        if (c_ssvs->parsed()) return cmd_ssvs(ssvs);
    } catch (const emvs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
