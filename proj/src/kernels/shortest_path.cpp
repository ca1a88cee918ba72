#include "gkl/kernels/shortest_path.hpp"

#include "gkl/error.hpp"
#include "gkl/parallel.hpp"

#include <algorithm>

namespace gkl {

namespace {

const Label kImplicitLabel;

template <typename LabelLookup, typename TripleLookup>
FeatureMap sp_features(const Graph& g, const DistanceMatrix& dist, bool with_labels, LabelLookup&& label_id,
                       TripleLookup&& triple_id) {
    const std::size_t n = g.order();
    std::vector<FeatureId> ids(n);
    for (Vertex v = 0; v < n; ++v) ids[v] = label_id(with_labels ? g.vertex_label(v) : kImplicitLabel);

    std::vector<FeatureMap::Entry> entries;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            const auto d = dist.at(u, v);
            if (!d) continue;
            const SpTriple t{std::min(ids[u], ids[v]), std::max(ids[u], ids[v]), *d};
            entries.emplace_back(triple_id(t), 1.0);
        }
    }
    return FeatureMap::from_entries(std::move(entries));
}

void require_labels(const Graph& g, bool with_labels) {
    if (with_labels && !g.has_vertex_labels()) {
        raise(ErrorKind::IncompatibleInput, "shortest_path with with_labels=true requires vertex labels");
    }
}

}  // namespace

std::size_t SpTripleHash::operator()(const SpTriple& t) const noexcept {
    std::size_t h = std::hash<FeatureId>{}(t.low);
    h ^= std::hash<FeatureId>{}(t.high) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::uint32_t>{}(t.distance) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

FeatureMap shortest_path_features(const Graph& g, ShortestPathDictionaries& dict, bool with_labels) {
    require_labels(g, with_labels);
    return sp_features(
        g, floyd_warshall(g), with_labels, [&](const Label& l) { return dict.labels.intern(l); },
        [&](const SpTriple& t) { return dict.triples.intern(t); });
}

FeatureMap shortest_path_features_frozen(const Graph& g, const ShortestPathDictionaries& dict, bool with_labels) {
    require_labels(g, with_labels);
    FrozenLookup labels(dict.labels);
    FrozenLookup triples(dict.triples);
    return sp_features(g, floyd_warshall(g), with_labels, labels, triples);
}

void ShortestPathExtractor::require(const Graph& g) const { require_labels(g, with_labels_); }

std::vector<FeatureMap> ShortestPathExtractor::fit_features(std::span<const Graph> graphs) {
    // Distances are independent per graph; interning must follow input order.
    std::vector<DistanceMatrix> dists(graphs.size(), DistanceMatrix(0));
    parallel_for(graphs.size(), [&](std::size_t i) { dists[i] = floyd_warshall(graphs[i]); });
    std::vector<FeatureMap> out;
    out.reserve(graphs.size());
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        out.push_back(sp_features(
            graphs[i], dists[i], with_labels_, [&](const Label& l) { return dict_.labels.intern(l); },
            [&](const SpTriple& t) { return dict_.triples.intern(t); }));
    }
    return out;
}

std::vector<FeatureMap> ShortestPathExtractor::frozen_features(std::span<const Graph> graphs) const {
    std::vector<FeatureMap> out(graphs.size());
    parallel_for(graphs.size(),
                 [&](std::size_t i) { out[i] = shortest_path_features_frozen(graphs[i], dict_, with_labels_); });
    return out;
}

}  // namespace gkl
