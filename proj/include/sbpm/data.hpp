#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace sbpm {

enum class ColumnKind { numeric, discrete };

/// One column of a Dataset. `bin_edges` is populated by discretize() with
/// the bins + 1 equal-width boundaries of the source column; it is metadata
/// and does not take part in dataset equality or CSV serialization.
struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::numeric;
    std::vector<double> bin_edges;
};

/// A table of fixed-arity records over numeric and/or discrete columns.
/// Numeric cells are finite reals; discrete cells are non-negative integer
/// bin codes (stored exactly as doubles). Row order is significant.
/// Immutable once built; safe to share across concurrent readers.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<Column> schema);

    /// Validates arity, finiteness, and (for discrete columns) that the
    /// value is a non-negative integer. Throws Error otherwise.
    void append_row(std::span<const double> row);

    std::size_t rows() const { return schema_.empty() ? 0 : values_.size() / schema_.size(); }
    std::size_t cols() const { return schema_.size(); }
    const std::vector<Column>& schema() const { return schema_; }

    double at(std::size_t row, std::size_t col) const {
        return values_[row * schema_.size() + col];
    }
    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * schema_.size(), schema_.size()};
    }
    const std::vector<double>& values() const { return values_; }

    void reserve_rows(std::size_t n) { values_.reserve(n * schema_.size()); }

    /// True when names, kinds, and cell values (bitwise) coincide.
    bool operator==(const Dataset& other) const;

private:
    std::vector<Column> schema_;
    std::vector<double> values_;  // row-major
};

/// Schema of `dims` numeric columns named x0, x1, ...
std::vector<Column> numeric_schema(std::size_t dims);

/// Same arity and per-column kinds (names are not compared).
bool schemas_compatible(const Dataset& a, const Dataset& b);

struct GaussSpec {
    std::size_t n_points = 0;
    std::uint64_t seed = 0;
    std::size_t dims = 2;
};

/// n_points rows of independent standard-normal coordinates, deterministic
/// per seed. Requires n_points >= 2 and dims >= 1.
Dataset generate_gauss(const GaussSpec& spec);

struct SplitResult {
    Dataset train;
    Dataset test;
    std::vector<std::size_t> permutation;  // applied row permutation of the parent
};

/// Uniform random permutation of the rows; first half becomes train, second
/// half test. Requires an even row count >= 2; throws Error otherwise.
SplitResult split_even(const Dataset& d, std::uint64_t seed);

struct OutlierRule {
    double radius = 0.0;
};

/// Euclidean-norm threshold whose tail holds exactly 10% of the standard
/// 2d normal: sqrt(2 ln 10).
inline double default_outlier_radius() { return std::sqrt(2.0 * std::log(10.0)); }

inline OutlierRule default_outlier_rule() { return OutlierRule{default_outlier_radius()}; }

/// mask[i] = true iff the Euclidean norm of row i exceeds rule.radius.
/// Requires exactly 2 numeric columns and rule.radius > 0.
std::vector<bool> outlier_mask(const Dataset& d, const OutlierRule& rule);

/// Maps every numeric column to equal-width bins over its observed min/max;
/// the maximum lands in the top bin. A constant column maps to bin 0
/// everywhere. Discrete columns pass through unchanged. Row count and order
/// are preserved. Requires bins_per_column >= 2. The fitted bin edges are
/// recorded in the result schema so the same binning can be replayed on
/// another dataset with apply_bins.
Dataset discretize(const Dataset& d, std::size_t bins_per_column);

/// Re-applies a binning recorded by discretize to a new dataset: numeric
/// columns are coded against the reference column's bin_edges (values outside
/// the fitted range land in the nearest extreme bin), columns the reference
/// leaves numeric or discrete-without-edges pass through and must already
/// match in kind. Guarantees that equal raw values receive equal codes across
/// every dataset mapped with the same reference schema.
Dataset apply_bins(const Dataset& d, const std::vector<Column>& reference);

/// CSV with one header row of column names; numeric cells rendered at full
/// round-trip precision (always containing '.' or an exponent), discrete
/// cells as bare non-negative integers. Column kinds are recovered on read
/// from that rendering. Parse failures name the row and column.
Dataset read_csv(const std::filesystem::path& path);
Dataset read_csv(const std::filesystem::path& path, const std::vector<Column>& schema);
void write_csv(const Dataset& d, const std::filesystem::path& path);

/// The exact CSV cell renderings (shared with the report writer).
std::string render_numeric_cell(double value);
std::string render_discrete_cell(double code);

}  // namespace sbpm
