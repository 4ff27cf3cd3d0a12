#include <cmath>

#include "emvs/errors.hpp"
#include "emvs/types.hpp"

namespace emvs {

void SpikeSlabHyper::validate() const {
    auto pos = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!pos(nu0) || !pos(nu1) || !pos(a) || !pos(b) || !pos(nu) || !pos(lambda))
        throw SpecInvalid("prior hyperparameters must be strictly positive and finite");
    if (!(nu0 < nu1)) throw SpecInvalid("nu0 must be smaller than nu1");
}

StandardizeStats standardize_stats(const linalg::Matrix& x_raw) {
    const std::size_t n = x_raw.rows, p = x_raw.cols;
    if (n < 2) throw SpecInvalid("standardize needs at least 2 rows");
    StandardizeStats s;
    s.mean.assign(p, 0.0);
    s.sd.assign(p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* r = x_raw.row(i);
        for (std::size_t j = 0; j < p; ++j) {
            if (!std::isfinite(r[j])) throw NonFinite("design matrix");
            s.mean[j] += r[j];
        }
    }
    for (std::size_t j = 0; j < p; ++j) s.mean[j] /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* r = x_raw.row(i);
        for (std::size_t j = 0; j < p; ++j) {
            const double c = r[j] - s.mean[j];
            s.sd[j] += c * c;
        }
    }
    for (std::size_t j = 0; j < p; ++j) {
        s.sd[j] = std::sqrt(s.sd[j] / static_cast<double>(n - 1));
        if (s.sd[j] == 0.0) throw ConstantColumn(j);
    }
    return s;
}

linalg::Matrix apply_standardize(const linalg::Matrix& x_raw, const StandardizeStats& stats) {
    if (stats.mean.size() != x_raw.cols || stats.sd.size() != x_raw.cols)
        throw DimensionMismatch("standardization stats do not match column count");
    linalg::Matrix out(x_raw.rows, x_raw.cols);
    for (std::size_t i = 0; i < x_raw.rows; ++i) {
        const double* r = x_raw.row(i);
        double* o = out.row(i);
        for (std::size_t j = 0; j < x_raw.cols; ++j) {
            if (!std::isfinite(r[j])) throw NonFinite("design matrix");
            o[j] = (r[j] - stats.mean[j]) / stats.sd[j];
        }
    }
    return out;
}

linalg::Matrix standardize(const linalg::Matrix& x_raw) {
    return apply_standardize(x_raw, standardize_stats(x_raw));
}

const Dataset& validate_dataset(const Dataset& d) {
    if (d.y.size() != d.x.rows)
        throw DimensionMismatch("label count " + std::to_string(d.y.size()) +
                                " does not match row count " + std::to_string(d.x.rows));
    if (d.x.rows < 2 || d.x.cols < 1) throw SpecInvalid("dataset needs n >= 2 and p >= 1");
    for (double v : d.x.data)
        if (!std::isfinite(v)) throw NonFinite("design matrix");
    for (std::size_t i = 0; i < d.y.size(); ++i) {
        const int v = d.y[i];
        if (d.coding == Coding::PlusMinusOne) {
            if (v != -1 && v != 1) throw LabelCodingMismatch(i, v, "{-1, +1}");
        } else {
            if (v != 0 && v != 1) throw LabelCodingMismatch(i, v, "{0, 1}");
        }
    }
    return d;
}

Dataset recode(const Dataset& d, Coding target) {
    validate_dataset(d);
    Dataset out = d;
    out.coding = target;
    if (d.coding == target) return out;
    for (auto& v : out.y) {
        if (target == Coding::ZeroOne)
            v = (v == -1) ? 0 : 1;
        else
            v = (v == 0) ? -1 : 1;
    }
    return out;
}

}  // namespace emvs
