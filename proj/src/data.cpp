#include "sbpm/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "sbpm/error.hpp"
#include "sbpm/rng.hpp"

namespace sbpm {

Dataset::Dataset(std::vector<Column> schema) : schema_(std::move(schema)) {
    if (schema_.empty()) throw Error("dataset schema must have at least one column");
}

void Dataset::append_row(std::span<const double> row) {
    if (row.size() != schema_.size()) {
        throw Error("row arity " + std::to_string(row.size()) + " does not match schema arity " +
                    std::to_string(schema_.size()));
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
        const double v = row[c];
        if (!std::isfinite(v)) {
            throw Error("non-finite value in column '" + schema_[c].name + "'");
        }
        if (schema_[c].kind == ColumnKind::discrete &&
            (v < 0.0 || v != std::floor(v))) {
            throw Error("discrete column '" + schema_[c].name +
                        "' requires a non-negative integer code, got " + std::to_string(v));
        }
    }
    values_.insert(values_.end(), row.begin(), row.end());
}

bool Dataset::operator==(const Dataset& other) const {
    if (schema_.size() != other.schema_.size()) return false;
    for (std::size_t c = 0; c < schema_.size(); ++c) {
        if (schema_[c].name != other.schema_[c].name) return false;
        if (schema_[c].kind != other.schema_[c].kind) return false;
    }
    if (values_.size() != other.values_.size()) return false;
    return std::memcmp(values_.data(), other.values_.data(),
                       values_.size() * sizeof(double)) == 0;
}

std::vector<Column> numeric_schema(std::size_t dims) {
    std::vector<Column> schema;
    schema.reserve(dims);
    for (std::size_t i = 0; i < dims; ++i) {
        schema.push_back(Column{"x" + std::to_string(i), ColumnKind::numeric, {}});
    }
    return schema;
}

bool schemas_compatible(const Dataset& a, const Dataset& b) {
    if (a.cols() != b.cols()) return false;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        if (a.schema()[c].kind != b.schema()[c].kind) return false;
    }
    return true;
}

Dataset generate_gauss(const GaussSpec& spec) {
    if (spec.n_points < 2) throw Error("gauss spec requires n_points >= 2");
    if (spec.dims < 1) throw Error("gauss spec requires dims >= 1");
    Dataset d{numeric_schema(spec.dims)};
    d.reserve_rows(spec.n_points);
    Rng rng(spec.seed);
    std::vector<double> row(spec.dims);
    for (std::size_t i = 0; i < spec.n_points; ++i) {
        for (std::size_t c = 0; c < spec.dims; ++c) row[c] = rng.normal();
        d.append_row(row);
    }
    return d;
}

SplitResult split_even(const Dataset& d, std::uint64_t seed) {
    const std::size_t n = d.rows();
    if (n < 2) throw Error("split_even requires at least 2 rows, got " + std::to_string(n));
    if (n % 2 != 0) throw Error("split_even requires an even row count, got " + std::to_string(n));

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    // Fisher-Yates; std::shuffle is implementation-defined, this is not.
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t j = rng.below(i + 1);
        std::swap(perm[i], perm[j]);
    }

    SplitResult result;
    result.train = Dataset{d.schema()};
    result.test = Dataset{d.schema()};
    result.train.reserve_rows(n / 2);
    result.test.reserve_rows(n / 2);
    for (std::size_t i = 0; i < n / 2; ++i) result.train.append_row(d.row(perm[i]));
    for (std::size_t i = n / 2; i < n; ++i) result.test.append_row(d.row(perm[i]));
    result.permutation = std::move(perm);
    return result;
}

std::vector<bool> outlier_mask(const Dataset& d, const OutlierRule& rule) {
    if (rule.radius <= 0.0) throw Error("outlier rule requires radius > 0");
    if (d.cols() != 2 || d.schema()[0].kind != ColumnKind::numeric ||
        d.schema()[1].kind != ColumnKind::numeric) {
        throw Error("outlier_mask requires exactly 2 numeric columns");
    }
    std::vector<bool> mask(d.rows());
    for (std::size_t i = 0; i < d.rows(); ++i) {
        mask[i] = std::hypot(d.at(i, 0), d.at(i, 1)) > rule.radius;
    }
    return mask;
}

Dataset apply_bins(const Dataset& d, const std::vector<Column>& reference) {
    if (reference.size() != d.cols()) {
        throw Error("apply_bins: reference schema arity " + std::to_string(reference.size()) +
                    " does not match dataset arity " + std::to_string(d.cols()));
    }
    std::vector<Column> schema = d.schema();
    for (std::size_t c = 0; c < d.cols(); ++c) {
        const Column& ref = reference[c];
        if (ref.kind == ColumnKind::numeric) {
            if (schema[c].kind != ColumnKind::numeric) {
                throw Error("apply_bins: column '" + schema[c].name +
                            "' is discrete but the reference column is numeric");
            }
            continue;
        }
        if (ref.bin_edges.empty()) {
            if (schema[c].kind != ColumnKind::discrete) {
                throw Error("apply_bins: column '" + schema[c].name +
                            "' is numeric but the reference column records no bin edges");
            }
            continue;
        }
        if (ref.bin_edges.size() < 2) {
            throw Error("apply_bins: reference column '" + ref.name +
                        "' records fewer than 2 bin edges");
        }
        if (schema[c].kind != ColumnKind::numeric) {
            throw Error("apply_bins: column '" + schema[c].name +
                        "' is already discrete; bin edges apply to raw numeric values");
        }
        schema[c].kind = ColumnKind::discrete;
        schema[c].bin_edges = ref.bin_edges;
    }

    Dataset out{schema};
    out.reserve_rows(d.rows());
    std::vector<double> row(d.cols());
    for (std::size_t i = 0; i < d.rows(); ++i) {
        for (std::size_t c = 0; c < d.cols(); ++c) {
            const Column& ref = reference[c];
            const double v = d.at(i, c);
            if (ref.kind == ColumnKind::numeric || ref.bin_edges.empty()) {
                row[c] = v;
                continue;
            }
            const double lo = ref.bin_edges.front();
            const double hi = ref.bin_edges.back();
            if (hi == lo) {  // fitted on a constant column: one degenerate bin
                row[c] = 0.0;
                continue;
            }
            const double bins = static_cast<double>(ref.bin_edges.size() - 1);
            const double width = (hi - lo) / bins;
            row[c] = std::clamp(std::floor((v - lo) / width), 0.0, bins - 1.0);
        }
        out.append_row(row);
    }
    return out;
}

Dataset discretize(const Dataset& d, std::size_t bins_per_column) {
    if (bins_per_column < 2) throw Error("discretize requires bins_per_column >= 2");

    std::vector<Column> reference = d.schema();
    for (std::size_t c = 0; c < d.cols(); ++c) {
        if (reference[c].kind == ColumnKind::discrete) {
            // Already coded: pass through rather than re-bin, and keep any
            // edges the column carries out of the reference so apply_bins
            // does not mistake them for a coding request.
            reference[c].bin_edges.clear();
            continue;
        }
        double lo = 0.0, hi = 0.0;
        if (d.rows() > 0) {
            lo = hi = d.at(0, c);
            for (std::size_t i = 1; i < d.rows(); ++i) {
                lo = std::min(lo, d.at(i, c));
                hi = std::max(hi, d.at(i, c));
            }
        }
        const double width =
            hi == lo ? 0.0 : (hi - lo) / static_cast<double>(bins_per_column);
        reference[c].kind = ColumnKind::discrete;
        reference[c].bin_edges.clear();
        reference[c].bin_edges.reserve(bins_per_column + 1);
        for (std::size_t b = 0; b <= bins_per_column; ++b) {
            reference[c].bin_edges.push_back(hi == lo ? lo
                                                      : lo + width * static_cast<double>(b));
        }
    }
    // Coding goes through apply_bins so a dataset and any later dataset coded
    // against its recorded edges share one value -> bin mapping.
    return apply_bins(d, reference);
}

}  // namespace sbpm
