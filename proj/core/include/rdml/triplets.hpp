#pragma once

#include "rdml/dataset.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rdml {

/// Triplet side information: anchor should be closer to positive (same
/// label) than to negative (different label) by a unit margin.
struct Triplet {
    int anchor;
    int positive;
    int negative;

    friend bool operator==(const Triplet&, const Triplet&) = default;
    friend auto operator<=>(const Triplet&, const Triplet&) = default;
};

struct TripletSet {
    std::vector<Triplet> triplets;

    std::size_t size() const { return triplets.size(); }
    bool empty() const { return triplets.empty(); }
};

/// For each instance, its k nearest same-label instances under the Euclidean
/// metric (ties broken by lower index). k is clipped per instance to
/// class size - 1; singleton classes yield no pairs.
std::vector<std::pair<int, int>> target_neighbors(const Dataset& ds, int k);

/// For each pair (i, i+), every differently-labeled j with
/// ||x_i - x_j||^2 <= ||x_i - x_i+||^2 + 1 yields the triplet (i, i+, j).
TripletSet imposters(const Dataset& ds, const std::vector<std::pair<int, int>>& pairs);

struct MinerConfig {
    int k = 3;
    std::size_t cap = 50000; // uniform random subsample above this size
    std::uint64_t seed = 0;
};

/// target_neighbors + imposters, then the cap. Mining is static: it uses the
/// Euclidean metric once, before training.
TripletSet mine_triplets(const Dataset& ds, const MinerConfig& cfg = {});

/// Text file, one "i i+ i-" triple of 0-based indices per line.
void save_triplets(const TripletSet& ts, const std::string& path);
TripletSet load_triplets(const std::string& path);

} // namespace rdml
