#pragma once

#include <cstddef>
#include <vector>

#include "sbpm/data.hpp"

namespace sbpm {

/// Euclidean requires all-numeric columns; Hamming (count of differing
/// coordinates) requires all-discrete columns.
enum class DistanceKind { euclidean, hamming };

/// First and second nearest-neighbor distances of one query row against a
/// reference dataset. The two reference records are distinct rows even when
/// their values coincide; 0 <= first_distance <= second_distance.
struct NeighborResult {
    std::size_t query_index = 0;
    double first_distance = 0.0;
    double second_distance = 0.0;
    std::size_t first_ref_index = 0;
    std::size_t second_ref_index = 0;
};

/// For each query row, the two smallest distances to distinct reference
/// rows, ties broken by lower reference index. Result order matches query
/// order. Uses a kd-tree for Euclidean data; agrees bit-exactly with
/// nearest_two_bruteforce. Requires |references| >= 2.
std::vector<NeighborResult> nearest_two(const Dataset& queries, const Dataset& references,
                                        DistanceKind kind);

/// Same contract as nearest_two, as the O(|queries| * |references|) scan.
/// Kept as the independent oracle pinning the accelerated path.
std::vector<NeighborResult> nearest_two_bruteforce(const Dataset& queries,
                                                   const Dataset& references,
                                                   DistanceKind kind);

/// Fraction of query rows with at least one value-identical row in
/// references (bitwise on canonical values; -0 and +0 coincide).
double exact_match_share(const Dataset& queries, const Dataset& references);

}  // namespace sbpm
