#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "emvs/harness.hpp"
#include "emvs/ssvs.hpp"
#include "emvs/types.hpp"

// File formats: comma-separated UTF-8 CSV with a mandatory header row and
// 17-significant-digit numbers (so every double round-trips exactly), plus a
// versioned JSON fit record.
namespace emvs::io {

std::string format_double(double v);

struct Csv {
    std::vector<std::string> header;
    linalg::Matrix values;
};

Csv read_csv(const std::string& path);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const linalg::Matrix& values);

// Splits off the named label column; the remaining columns become the design.
// Label coding is auto-detected: any -1 means {-1, +1}, otherwise {0, 1}.
Dataset dataset_from_csv(const Csv& csv, const std::string& label_col);

void write_stats_csv(const std::string& path, const StandardizeStats& stats);
StandardizeStats read_stats_csv(const std::string& path);

// Everything a fit leaves behind; schema_version guards future layout changes.
struct FitDocument {
    std::string model;  // "logistic" or "probit"
    SpikeSlabHyper hyper;
    std::vector<double> beta;
    std::vector<double> p_star;
    std::vector<bool> selected;
    std::size_t iterations = 0;
    bool converged = false;
    double wall_time_s = 0.0;
    std::uint64_t seed = 0;
    int schema_version = 1;
};

FitDocument make_fit_document(const std::string& model, const SpikeSlabHyper& hyper,
                              const FitResult& fit);
void write_fit_json(const std::string& path, const FitDocument& doc);
FitDocument read_fit_json(const std::string& path);

std::string model_name(harness::Model m);
harness::Model model_from_name(const std::string& name);

// Study rows: replicate, model, nu0, the four rates, a 4-character 0/1 mask
// saying which rates are defined (tpr, tnr, ppv, npv order), and the fit seed.
void write_study_csv(const std::string& path, const std::vector<harness::StudyRow>& rows);
std::vector<harness::StudyRow> read_study_csv(const std::string& path);
void write_summary_csv(const std::string& path, const std::vector<harness::SummaryRow>& rows);

// The resume manifest is a plain list of completed cell keys, one per line.
std::set<std::string> read_manifest(const std::string& path);  // empty when absent
void append_manifest(const std::string& path, const std::string& key);

void write_ssvs_csv(const std::string& path, const ssvs::SsvsResult& r);

}  // namespace emvs::io
