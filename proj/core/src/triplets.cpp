#include "rdml/triplets.hpp"

#include "rdml/errors.hpp"
#include "rdml/rng.hpp"

#include <algorithm>
#include <fstream>
#include <map>

namespace rdml {

std::vector<std::pair<int, int>> target_neighbors(const Dataset& ds, int k) {
    validate_dataset(ds);
    if (k <= 0) {
        throw InvalidInputError("target_neighbors: k must be positive");
    }
    const int n = ds.n();
    std::map<int, std::vector<int>> by_label;
    for (int i = 0; i < n; ++i) by_label[ds.y[static_cast<std::size_t>(i)]].push_back(i);

    std::vector<std::pair<int, int>> pairs;
    std::vector<std::pair<double, int>> candidates;
    for (int i = 0; i < n; ++i) {
        const auto& members = by_label[ds.y[static_cast<std::size_t>(i)]];
        if (members.size() < 2) continue; // singleton class: no same-label neighbor
        candidates.clear();
        for (const int j : members) {
            if (j == i) continue;
            candidates.emplace_back((ds.X.row(i) - ds.X.row(j)).squaredNorm(), j);
        }
        const int take = std::min<int>(k, static_cast<int>(candidates.size()));
        std::partial_sort(candidates.begin(), candidates.begin() + take, candidates.end());
        for (int t = 0; t < take; ++t) pairs.emplace_back(i, candidates[static_cast<std::size_t>(t)].second);
    }
    return pairs;
}

TripletSet imposters(const Dataset& ds, const std::vector<std::pair<int, int>>& pairs) {
    validate_dataset(ds);
    const int n = ds.n();
    TripletSet out;
    for (const auto& [anchor, positive] : pairs) {
        const double radius = (ds.X.row(anchor) - ds.X.row(positive)).squaredNorm() + 1.0;
        const int label = ds.y[static_cast<std::size_t>(anchor)];
        for (int j = 0; j < n; ++j) {
            if (ds.y[static_cast<std::size_t>(j)] == label) continue;
            if ((ds.X.row(anchor) - ds.X.row(j)).squaredNorm() <= radius) {
                out.triplets.push_back({anchor, positive, j});
            }
        }
    }
    return out;
}

TripletSet mine_triplets(const Dataset& ds, const MinerConfig& cfg) {
    TripletSet ts = imposters(ds, target_neighbors(ds, cfg.k));
    if (cfg.cap > 0 && ts.size() > cfg.cap) {
        Rng rng(cfg.seed);
        const auto keep = rng.sample_indices(static_cast<int>(ts.size()),
                                             static_cast<int>(cfg.cap));
        TripletSet capped;
        capped.triplets.reserve(keep.size());
        for (const int i : keep) capped.triplets.push_back(ts.triplets[static_cast<std::size_t>(i)]);
        return capped;
    }
    return ts;
}

void save_triplets(const TripletSet& ts, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("save_triplets: cannot open '" + path + "' for writing", 0);
    }
    for (const auto& t : ts.triplets) {
        out << t.anchor << " " << t.positive << " " << t.negative << "\n";
    }
}

TripletSet load_triplets(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("load_triplets: cannot open '" + path + "'", 0);
    }
    TripletSet ts;
    Triplet t{};
    while (in >> t.anchor >> t.positive >> t.negative) ts.triplets.push_back(t);
    if (!in.eof()) {
        throw ParseError("load_triplets: malformed triple", ts.size() + 1);
    }
    return ts;
}

} // namespace rdml
