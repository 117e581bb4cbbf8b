#include "sbpm/nn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "sbpm/error.hpp"
#include "sbpm/parallel.hpp"

namespace sbpm {

namespace {

void check_inputs(const Dataset& queries, const Dataset& references, DistanceKind kind) {
    if (references.rows() < 2) {
        throw Error("nearest_two requires at least 2 reference rows (second neighbor), got " +
                    std::to_string(references.rows()));
    }
    if (!schemas_compatible(queries, references)) {
        throw Error("query and reference schemas are incompatible");
    }
    const ColumnKind required =
        kind == DistanceKind::euclidean ? ColumnKind::numeric : ColumnKind::discrete;
    for (const Column& col : queries.schema()) {
        if (col.kind != required) {
            throw Error(std::string("distance kind requires all columns to be ") +
                        (required == ColumnKind::numeric ? "numeric" : "discrete") +
                        ", column '" + col.name + "' is not");
        }
    }
}

// Both search paths rank candidates by this kernel so their outputs agree
// bit-for-bit. Euclidean ranks on the squared distance (same order) and
// takes one sqrt at the end.
double ranking_distance(std::span<const double> a, std::span<const double> b,
                        DistanceKind kind) {
    if (kind == DistanceKind::euclidean) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = a[i] - b[i];
            s += d * d;
        }
        return s;
    }
    double differing = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) differing += 1.0;
    }
    return differing;
}

double reported_distance(double ranking, DistanceKind kind) {
    return kind == DistanceKind::euclidean ? std::sqrt(ranking) : ranking;
}

struct BestTwo {
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = std::numeric_limits<double>::infinity();
    std::size_t i1 = std::numeric_limits<std::size_t>::max();
    std::size_t i2 = std::numeric_limits<std::size_t>::max();

    // Lexicographic on (distance, index): equidistant references resolve to
    // the lower index.
    void offer(double d, std::size_t i) {
        if (d < d1 || (d == d1 && i < i1)) {
            d2 = d1;
            i2 = i1;
            d1 = d;
            i1 = i;
        } else if (d < d2 || (d == d2 && i < i2)) {
            d2 = d;
            i2 = i;
        }
    }
};

NeighborResult to_result(std::size_t query_index, const BestTwo& best, DistanceKind kind) {
    return NeighborResult{query_index, reported_distance(best.d1, kind),
                          reported_distance(best.d2, kind), best.i1, best.i2};
}

// Static kd-tree over the reference rows, cyclic splitting dimension,
// median element as the node point. Exact: subtrees are skipped only when
// every point in them is strictly farther than the current second-best.
class KdTree {
public:
    explicit KdTree(const Dataset& refs) : refs_(refs), dims_(refs.cols()) {
        order_.resize(refs.rows());
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        nodes_.reserve(refs.rows());
        root_ = build(0, refs.rows(), 0);
    }

    void search(std::span<const double> query, BestTwo& best) const {
        descend(root_, query, best);
    }

private:
    struct Node {
        std::size_t point = 0;  // reference row index
        std::size_t axis = 0;
        std::int64_t left = -1;
        std::int64_t right = -1;
    };

    std::int64_t build(std::size_t begin, std::size_t end, std::size_t depth) {
        if (begin >= end) return -1;
        const std::size_t axis = depth % dims_;
        const std::size_t mid = begin + (end - begin) / 2;
        std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                         [&](std::size_t a, std::size_t b) {
                             const double va = refs_.at(a, axis);
                             const double vb = refs_.at(b, axis);
                             return va < vb || (va == vb && a < b);
                         });
        Node node;
        node.point = order_[mid];
        node.axis = axis;
        const std::int64_t self = static_cast<std::int64_t>(nodes_.size());
        nodes_.push_back(node);
        nodes_[self].left = build(begin, mid, depth + 1);
        nodes_[self].right = build(mid + 1, end, depth + 1);
        return self;
    }

    void descend(std::int64_t index, std::span<const double> query, BestTwo& best) const {
        if (index < 0) return;
        const Node& node = nodes_[index];
        best.offer(ranking_distance(query, refs_.row(node.point), DistanceKind::euclidean),
                   node.point);

        const double delta = query[node.axis] - refs_.at(node.point, node.axis);
        const std::int64_t near = delta < 0.0 ? node.left : node.right;
        const std::int64_t far = delta < 0.0 ? node.right : node.left;
        descend(near, query, best);
        // Equality descends: a point at exactly the second-best distance but
        // with a lower index must still win the tie-break.
        if (delta * delta <= best.d2) descend(far, query, best);
    }

    const Dataset& refs_;
    std::size_t dims_;
    std::vector<std::size_t> order_;
    std::vector<Node> nodes_;
    std::int64_t root_ = -1;
};

}  // namespace

std::vector<NeighborResult> nearest_two_bruteforce(const Dataset& queries,
                                                   const Dataset& references,
                                                   DistanceKind kind) {
    check_inputs(queries, references, kind);
    std::vector<NeighborResult> results(queries.rows());
    parallel_for(queries.rows(), [&](std::size_t q) {
        BestTwo best;
        for (std::size_t r = 0; r < references.rows(); ++r) {
            best.offer(ranking_distance(queries.row(q), references.row(r), kind), r);
        }
        results[q] = to_result(q, best, kind);
    });
    return results;
}

std::vector<NeighborResult> nearest_two(const Dataset& queries, const Dataset& references,
                                        DistanceKind kind) {
    check_inputs(queries, references, kind);
    if (kind == DistanceKind::hamming) {
        // No index pays off for Hamming on code columns at these sizes.
        return nearest_two_bruteforce(queries, references, kind);
    }
    const KdTree tree(references);
    std::vector<NeighborResult> results(queries.rows());
    parallel_for(queries.rows(), [&](std::size_t q) {
        BestTwo best;
        tree.search(queries.row(q), best);
        results[q] = to_result(q, best, kind);
    });
    return results;
}

namespace {

double canonical_value(double v) { return v == 0.0 ? 0.0 : v; }

struct RowHash {
    std::size_t operator()(const std::vector<std::uint64_t>& bits) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (std::uint64_t b : bits) {
            h ^= b;
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

std::vector<std::uint64_t> row_key(std::span<const double> row) {
    std::vector<std::uint64_t> key(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
        const double v = canonical_value(row[i]);
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        key[i] = bits;
    }
    return key;
}

}  // namespace

double exact_match_share(const Dataset& queries, const Dataset& references) {
    if (!schemas_compatible(queries, references)) {
        throw Error("query and reference schemas are incompatible");
    }
    if (queries.rows() == 0) return 0.0;
    std::unordered_set<std::vector<std::uint64_t>, RowHash> seen;
    seen.reserve(references.rows() * 2);
    for (std::size_t r = 0; r < references.rows(); ++r) {
        seen.insert(row_key(references.row(r)));
    }
    std::size_t matched = 0;
    for (std::size_t q = 0; q < queries.rows(); ++q) {
        if (seen.contains(row_key(queries.row(q)))) ++matched;
    }
    return static_cast<double>(matched) / static_cast<double>(queries.rows());
}

}  // namespace sbpm
