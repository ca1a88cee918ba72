#include "gkl/kernels/histogram.hpp"

#include "gkl/error.hpp"
#include "gkl/parallel.hpp"

namespace gkl {

namespace {

template <typename LabelOf, typename Lookup>
FeatureMap histogram(std::size_t count, LabelOf&& label_of, Lookup&& lookup) {
    std::vector<FeatureMap::Entry> entries;
    entries.reserve(count);
    for (std::size_t i = 0; i < count; ++i) entries.emplace_back(lookup(label_of(i)), 1.0);
    return FeatureMap::from_entries(std::move(entries));
}

void require_vertex_labels(const Graph& g) {
    if (!g.has_vertex_labels()) raise(ErrorKind::IncompatibleInput, "kernel requires vertex labels");
}

void require_edge_labels(const Graph& g) {
    if (!g.has_edge_labels()) raise(ErrorKind::IncompatibleInput, "kernel requires edge labels");
}

}  // namespace

FeatureMap vertex_histogram_features(const Graph& g, LabelDictionary& dict) {
    require_vertex_labels(g);
    return histogram(
        g.order(), [&](std::size_t v) -> const Label& { return g.vertex_label(v); },
        [&](const Label& l) { return dict.intern(l); });
}

FeatureMap vertex_histogram_features_frozen(const Graph& g, const LabelDictionary& dict) {
    require_vertex_labels(g);
    FrozenLookup lookup(dict);
    return histogram(
        g.order(), [&](std::size_t v) -> const Label& { return g.vertex_label(v); }, lookup);
}

FeatureMap edge_histogram_features(const Graph& g, LabelDictionary& dict) {
    require_edge_labels(g);
    return histogram(
        g.size(), [&](std::size_t e) -> const Label& { return g.edge_label(e); },
        [&](const Label& l) { return dict.intern(l); });
}

FeatureMap edge_histogram_features_frozen(const Graph& g, const LabelDictionary& dict) {
    require_edge_labels(g);
    FrozenLookup lookup(dict);
    return histogram(
        g.size(), [&](std::size_t e) -> const Label& { return g.edge_label(e); }, lookup);
}

void VertexHistogramExtractor::require(const Graph& g) const { require_vertex_labels(g); }

std::vector<FeatureMap> VertexHistogramExtractor::fit_features(std::span<const Graph> graphs) {
    std::vector<FeatureMap> out;
    out.reserve(graphs.size());
    for (const auto& g : graphs) out.push_back(vertex_histogram_features(g, labels_));
    return out;
}

std::vector<FeatureMap> VertexHistogramExtractor::frozen_features(std::span<const Graph> graphs) const {
    std::vector<FeatureMap> out(graphs.size());
    parallel_for(graphs.size(), [&](std::size_t i) { out[i] = vertex_histogram_features_frozen(graphs[i], labels_); });
    return out;
}

void EdgeHistogramExtractor::require(const Graph& g) const { require_edge_labels(g); }

std::vector<FeatureMap> EdgeHistogramExtractor::fit_features(std::span<const Graph> graphs) {
    std::vector<FeatureMap> out;
    out.reserve(graphs.size());
    for (const auto& g : graphs) out.push_back(edge_histogram_features(g, labels_));
    return out;
}

std::vector<FeatureMap> EdgeHistogramExtractor::frozen_features(std::span<const Graph> graphs) const {
    std::vector<FeatureMap> out(graphs.size());
    parallel_for(graphs.size(), [&](std::size_t i) { out[i] = edge_histogram_features_frozen(graphs[i], labels_); });
    return out;
}

}  // namespace gkl
