#include "emvs/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "json.hpp"

#include "emvs/errors.hpp"

namespace emvs::io {
namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double parse_double(const std::string& cell, const std::string& path) {
    if (cell.empty()) throw IoFailure(path + ": empty numeric cell");
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size())
        throw IoFailure(path + ": cannot parse number '" + cell + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& cell, const std::string& path) {
    if (cell.empty()) throw IoFailure(path + ": empty integer cell");
    char* end = nullptr;
    const unsigned long long v = std::strtoull(cell.c_str(), &end, 10);
    if (end != cell.c_str() + cell.size())
        throw IoFailure(path + ": cannot parse integer '" + cell + "'");
    return static_cast<std::uint64_t>(v);
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

class FileWriter {
 public:
    explicit FileWriter(const std::string& path) : path_(path), out_(path) {
        if (!out_) throw IoFailure("cannot write " + path);
    }
    ~FileWriter() = default;

    std::ofstream& stream() { return out_; }

    void finish() {
        out_.flush();
        if (!out_) throw IoFailure("write failed for " + path_);
    }

 private:
    std::string path_;
    std::ofstream out_;
};

void write_row(std::ofstream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out << ',';
        out << cells[i];
    }
    out << '\n';
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Csv read_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw IoFailure(path + ": missing header row");
    Csv csv;
    csv.header = split(lines[0]);
    const std::size_t cols = csv.header.size();
    csv.values = linalg::Matrix(lines.size() - 1, cols);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::vector<std::string> cells = split(lines[i]);
        if (cells.size() != cols)
            throw IoFailure(path + ": row " + std::to_string(i) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(cols));
        for (std::size_t j = 0; j < cols; ++j) csv.values(i - 1, j) = parse_double(cells[j], path);
    }
    return csv;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const linalg::Matrix& values) {
    if (header.size() != values.cols) throw DimensionMismatch("header/column count mismatch");
    FileWriter w(path);
    write_row(w.stream(), header);
    std::vector<std::string> cells(values.cols);
    for (std::size_t i = 0; i < values.rows; ++i) {
        for (std::size_t j = 0; j < values.cols; ++j) cells[j] = format_double(values(i, j));
        write_row(w.stream(), cells);
    }
    w.finish();
}

Dataset dataset_from_csv(const Csv& csv, const std::string& label_col) {
    std::size_t label_idx = csv.header.size();
    for (std::size_t j = 0; j < csv.header.size(); ++j)
        if (csv.header[j] == label_col) {
            label_idx = j;
            break;
        }
    if (label_idx == csv.header.size())
        throw SpecInvalid("no column named '" + label_col + "'; name the response with --label-col");
    if (csv.header.size() < 2) throw SpecInvalid("need at least one feature column besides labels");

    const std::size_t n = csv.values.rows, p = csv.header.size() - 1;
    Dataset d;
    d.x = linalg::Matrix(n, p);
    d.y.resize(n);
    bool has_negative = false;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = csv.values(i, label_idx);
        if (v != -1.0 && v != 0.0 && v != 1.0)
            throw SpecInvalid("label column must hold -1/0/1 values, got " + format_double(v) +
                              " at row " + std::to_string(i));
        if (v == -1.0) has_negative = true;
        d.y[i] = static_cast<int>(v);
        std::size_t out = 0;
        for (std::size_t j = 0; j < csv.header.size(); ++j)
            if (j != label_idx) d.x(i, out++) = csv.values(i, j);
    }
    d.coding = has_negative ? Coding::PlusMinusOne : Coding::ZeroOne;
    validate_dataset(d);
    return d;
}

void write_stats_csv(const std::string& path, const StandardizeStats& stats) {
    if (stats.mean.size() != stats.sd.size()) throw DimensionMismatch("stats length mismatch");
    linalg::Matrix m(stats.mean.size(), 2);
    for (std::size_t j = 0; j < stats.mean.size(); ++j) {
        m(j, 0) = stats.mean[j];
        m(j, 1) = stats.sd[j];
    }
    write_csv(path, {"mean", "sd"}, m);
}

StandardizeStats read_stats_csv(const std::string& path) {
    const Csv csv = read_csv(path);
    if (csv.header != std::vector<std::string>{"mean", "sd"})
        throw SpecInvalid(path + " is not a stats file (expected header mean,sd)");
    StandardizeStats stats;
    stats.mean.resize(csv.values.rows);
    stats.sd.resize(csv.values.rows);
    for (std::size_t j = 0; j < csv.values.rows; ++j) {
        stats.mean[j] = csv.values(j, 0);
        stats.sd[j] = csv.values(j, 1);
    }
    return stats;
}

FitDocument make_fit_document(const std::string& model, const SpikeSlabHyper& hyper,
                              const FitResult& fit) {
    FitDocument doc;
    doc.model = model;
    doc.hyper = hyper;
    doc.beta = fit.state.beta;
    doc.p_star = fit.state.p_star;
    doc.selected = fit.selected;
    doc.iterations = fit.state.iteration;
    doc.converged = fit.converged;
    doc.wall_time_s = fit.wall_time;
    doc.seed = fit.seed;
    return doc;
}

void write_fit_json(const std::string& path, const FitDocument& doc) {
    ordered_json j;
    j["model"] = doc.model;
    j["hyper"] = {{"nu0", doc.hyper.nu0}, {"nu1", doc.hyper.nu1}, {"a", doc.hyper.a},
                  {"b", doc.hyper.b},     {"nu", doc.hyper.nu},   {"lambda", doc.hyper.lambda}};
    j["nu0"] = doc.hyper.nu0;
    j["beta"] = doc.beta;
    j["p_star"] = doc.p_star;
    j["selected"] = doc.selected;
    j["iterations"] = doc.iterations;
    j["converged"] = doc.converged;
    j["wall_time_s"] = doc.wall_time_s;
    j["seed"] = doc.seed;
    j["schema_version"] = doc.schema_version;
    FileWriter w(path);
    w.stream() << j.dump(2) << '\n';
    w.finish();
}

FitDocument read_fit_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IoFailure(path + ": invalid JSON (" + e.what() + ")");
    }
    FitDocument doc;
    try {
        doc.schema_version = j.at("schema_version").get<int>();
        if (doc.schema_version != 1)
            throw SpecInvalid(path + ": unsupported schema_version " +
                              std::to_string(doc.schema_version));
        doc.model = j.at("model").get<std::string>();
        const auto& h = j.at("hyper");
        doc.hyper.nu0 = h.at("nu0").get<double>();
        doc.hyper.nu1 = h.at("nu1").get<double>();
        doc.hyper.a = h.at("a").get<double>();
        doc.hyper.b = h.at("b").get<double>();
        doc.hyper.nu = h.at("nu").get<double>();
        doc.hyper.lambda = h.at("lambda").get<double>();
        doc.beta = j.at("beta").get<std::vector<double>>();
        doc.p_star = j.at("p_star").get<std::vector<double>>();
        doc.selected = j.at("selected").get<std::vector<bool>>();
        doc.iterations = j.at("iterations").get<std::size_t>();
        doc.converged = j.at("converged").get<bool>();
        doc.wall_time_s = j.at("wall_time_s").get<double>();
        doc.seed = j.at("seed").get<std::uint64_t>();
    } catch (const ordered_json::exception& e) {
        throw SpecInvalid(path + ": malformed fit record (" + e.what() + ")");
    }
    return doc;
}

std::string model_name(harness::Model m) {
    switch (m) {
        case harness::Model::Logistic: return "logistic";
        case harness::Model::Probit: return "probit";
        case harness::Model::Both: return "both";
    }
    throw SpecInvalid("unknown model enum value");
}

harness::Model model_from_name(const std::string& name) {
    if (name == "logistic") return harness::Model::Logistic;
    if (name == "probit") return harness::Model::Probit;
    if (name == "both") return harness::Model::Both;
    throw SpecInvalid("unknown model '" + name + "' (expected logistic, probit, or both)");
}

void write_study_csv(const std::string& path, const std::vector<harness::StudyRow>& rows) {
    FileWriter w(path);
    write_row(w.stream(),
              {"replicate", "model", "nu0", "tpr", "tnr", "ppv", "npv", "defined_flags", "seed"});
    for (const harness::StudyRow& row : rows) {
        const harness::SelectionMetrics& m = row.metrics;
        std::string flags;
        for (bool flag : {m.tpr_defined, m.tnr_defined, m.ppv_defined, m.npv_defined})
            flags.push_back(flag ? '1' : '0');
        write_row(w.stream(),
                  {std::to_string(row.replicate), model_name(row.model), format_double(row.nu0),
                   format_double(m.tpr), format_double(m.tnr), format_double(m.ppv),
                   format_double(m.npv), flags, std::to_string(row.seed)});
    }
    w.finish();
}

std::vector<harness::StudyRow> read_study_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw IoFailure(path + ": missing header row");
    std::vector<harness::StudyRow> rows;
    rows.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::vector<std::string> cells = split(lines[i]);
        if (cells.size() != 9)
            throw IoFailure(path + ": row " + std::to_string(i) + " has " +
                            std::to_string(cells.size()) + " cells, expected 9");
        harness::StudyRow row;
        row.replicate = static_cast<std::size_t>(parse_u64(cells[0], path));
        row.model = model_from_name(cells[1]);
        row.nu0 = parse_double(cells[2], path);
        row.metrics.tpr = parse_double(cells[3], path);
        row.metrics.tnr = parse_double(cells[4], path);
        row.metrics.ppv = parse_double(cells[5], path);
        row.metrics.npv = parse_double(cells[6], path);
        const std::string& flags = cells[7];
        if (flags.size() != 4 || flags.find_first_not_of("01") != std::string::npos)
            throw IoFailure(path + ": bad defined_flags '" + flags + "'");
        row.metrics.tpr_defined = flags[0] == '1';
        row.metrics.tnr_defined = flags[1] == '1';
        row.metrics.ppv_defined = flags[2] == '1';
        row.metrics.npv_defined = flags[3] == '1';
        row.fit_failed = flags == "0000";
        row.seed = parse_u64(cells[8], path);
        rows.push_back(row);
    }
    return rows;
}

void write_summary_csv(const std::string& path, const std::vector<harness::SummaryRow>& rows) {
    FileWriter w(path);
    write_row(w.stream(), {"model", "nu0", "mean_tpr", "se_tpr", "n_tpr", "mean_tnr", "se_tnr",
                           "n_tnr", "mean_ppv", "se_ppv", "n_ppv", "mean_npv", "se_npv", "n_npv"});
    for (const harness::SummaryRow& s : rows) {
        write_row(w.stream(),
                  {model_name(s.model), format_double(s.nu0), format_double(s.mean_tpr),
                   format_double(s.se_tpr), std::to_string(s.n_tpr), format_double(s.mean_tnr),
                   format_double(s.se_tnr), std::to_string(s.n_tnr), format_double(s.mean_ppv),
                   format_double(s.se_ppv), std::to_string(s.n_ppv), format_double(s.mean_npv),
                   format_double(s.se_npv), std::to_string(s.n_npv)});
    }
    w.finish();
}

std::set<std::string> read_manifest(const std::string& path) {
    std::ifstream in(path);
    std::set<std::string> keys;
    if (!in) return keys;
    std::string line;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (!line.empty()) keys.insert(line);
    }
    return keys;
}

void append_manifest(const std::string& path, const std::string& key) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw IoFailure("cannot write " + path);
    out << key << '\n';
    out.flush();
    if (!out) throw IoFailure("write failed for " + path);
}

void write_ssvs_csv(const std::string& path, const ssvs::SsvsResult& r) {
    FileWriter w(path);
    write_row(w.stream(), {"index", "inclusion_freq", "selected"});
    for (std::size_t j = 0; j < r.gamma_inclusion_freq.size(); ++j)
        write_row(w.stream(), {std::to_string(j), format_double(r.gamma_inclusion_freq[j]),
                               r.selected[j] ? "1" : "0"});
    w.finish();
}

}  // namespace emvs::io
