#include "gkl/kernels/weisfeiler_lehman.hpp"

#include "gkl/error.hpp"
#include "gkl/parallel.hpp"

#include <algorithm>
#include <unordered_map>

namespace gkl {

std::size_t WlSignatureHash::operator()(const WlSignature& s) const noexcept {
    std::size_t h = std::hash<FeatureId>{}(s.own) ^ (s.neighbors.size() * 0x9e3779b97f4a7c15ULL);
    for (FeatureId id : s.neighbors) h ^= std::hash<FeatureId>{}(id) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

FeatureId WlDictionary::intern(const WlSignature& s) {
    if (frozen_) raise(ErrorKind::InvalidSpec, "cannot intern into a frozen WL dictionary");
    return table_.intern(s);
}

namespace {

void require_labels(std::span<const Graph> graphs) {
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        if (!graphs[i].has_vertex_labels()) {
            raise(ErrorKind::IncompatibleInput,
                  "graph " + std::to_string(i) + ": weisfeiler_lehman requires vertex labels");
        }
    }
}

std::vector<WlSignature> signatures(const Graph& g, const LabelIds& labels) {
    std::vector<WlSignature> out(g.order());
    for (Vertex v = 0; v < g.order(); ++v) {
        out[v].own = labels[v];
        for (Vertex w : g.neighbors(v)) out[v].neighbors.push_back(labels[w]);
        std::sort(out[v].neighbors.begin(), out[v].neighbors.end());
    }
    return out;
}

LabelIds lookup_frozen(const std::vector<WlSignature>& sigs, const WlDictionary& dict) {
    FrozenLookup<WlSignature, WlSignatureHash> lookup(dict.table());
    LabelIds out;
    out.reserve(sigs.size());
    for (const auto& s : sigs) out.push_back(lookup(s));
    return out;
}

std::vector<LabelIds> step(std::span<const Graph> graphs, std::span<const LabelIds> labels, WlDictionary* growing,
                           const WlDictionary& dict) {
    if (labels.size() != graphs.size()) raise(ErrorKind::InvalidShape, "one labeling per graph required");
    std::vector<std::vector<WlSignature>> sigs(graphs.size());
    parallel_for(graphs.size(), [&](std::size_t i) {
        if (labels[i].size() != graphs[i].order()) {
            raise(ErrorKind::InvalidShape, "labeling of graph " + std::to_string(i) + " has the wrong length");
        }
        sigs[i] = signatures(graphs[i], labels[i]);
    });
    std::vector<LabelIds> out(graphs.size());
    if (growing) {
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            out[i].reserve(sigs[i].size());
            for (const auto& s : sigs[i]) out[i].push_back(growing->intern(s));
        }
    } else {
        parallel_for(graphs.size(), [&](std::size_t i) { out[i] = lookup_frozen(sigs[i], dict); });
    }
    return out;
}

LabelIds initial_frozen(const Graph& g, const Dictionary<Label>& initial) {
    FrozenLookup lookup(initial);
    LabelIds ids;
    ids.reserve(g.order());
    for (Vertex v = 0; v < g.order(); ++v) ids.push_back(lookup(g.vertex_label(v)));
    return ids;
}

}  // namespace

std::vector<LabelIds> wl_iteration(std::span<const Graph> graphs, std::span<const LabelIds> labels,
                                   WlDictionary& dict) {
    return step(graphs, labels, dict.frozen() ? nullptr : &dict, dict);
}

std::vector<Graph> wl_iteration(std::span<const Graph> graphs, Dictionary<Label>& initial, WlDictionary& dict) {
    require_labels(graphs);
    std::vector<LabelIds> level0(graphs.size());
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        if (dict.frozen()) {
            level0[i] = initial_frozen(graphs[i], initial);
        } else {
            for (Vertex v = 0; v < graphs[i].order(); ++v) level0[i].push_back(initial.intern(graphs[i].vertex_label(v)));
        }
    }
    return relabeled(graphs, wl_iteration(graphs, level0, dict));
}

std::vector<std::vector<LabelIds>> WlRefinement::fit(std::span<const Graph> graphs, std::size_t iterations) {
    require_labels(graphs);
    initial_ = Dictionary<Label>();
    levels_.clear();
    std::vector<std::vector<LabelIds>> out;
    out.emplace_back(graphs.size());
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        for (Vertex v = 0; v < graphs[i].order(); ++v) out[0][i].push_back(initial_.intern(graphs[i].vertex_label(v)));
    }
    FeatureId next = initial_.end_id();
    for (std::size_t level = 1; level <= iterations; ++level) {
        WlDictionary dict(next);
        out.push_back(wl_iteration(graphs, out.back(), dict));
        dict.freeze();
        next = dict.end_id();
        levels_.push_back(std::move(dict));
    }
    return out;
}

std::vector<std::vector<LabelIds>> WlRefinement::apply(std::span<const Graph> graphs) const {
    require_labels(graphs);
    std::vector<std::vector<LabelIds>> out;
    out.emplace_back(graphs.size());
    parallel_for(graphs.size(), [&](std::size_t i) { out[0][i] = initial_frozen(graphs[i], initial_); });
    for (const auto& dict : levels_) out.push_back(step(graphs, out.back(), nullptr, dict));
    return out;
}

std::vector<Graph> relabeled(std::span<const Graph> graphs, std::span<const LabelIds> labels) {
    std::vector<Graph> out;
    out.reserve(graphs.size());
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        std::vector<Label> names;
        names.reserve(labels[i].size());
        for (FeatureId id : labels[i]) names.push_back(std::to_string(id));
        out.push_back(graphs[i].with_vertex_labels(std::move(names)));
    }
    return out;
}

namespace {

template <typename F>
auto at_level(std::size_t level, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        raise(e.kind(), "WL level " + std::to_string(level) + ": " + e.detail());
    }
}

}  // namespace

WeisfeilerLehmanFittedKernel::WeisfeilerLehmanFittedKernel(const WeisfeilerLehmanParams& params,
                                                           std::span<const Graph> graphs)
    : size_(graphs.size()) {
    if (graphs.empty()) raise(ErrorKind::EmptyCollection, "cannot fit on an empty collection");
    const auto labelings = refinement_.fit(graphs, params.iterations);
    diagonal_.assign(size_, 0.0);
    for (std::size_t level = 0; level < labelings.size(); ++level) {
        const auto level_graphs = relabeled(graphs, labelings[level]);
        auto base = at_level(level, [&] { return fit_base(*params.base, level_graphs); });
        for (std::size_t i = 0; i < size_; ++i) diagonal_[i] += base->fit_diagonal()[i];
        levels_.push_back(std::move(base));
    }
}

KernelMatrix WeisfeilerLehmanFittedKernel::fit_matrix() const {
    KernelMatrix total = KernelMatrix::square(size_);
    for (std::size_t level = 0; level < levels_.size(); ++level) {
        const auto k = at_level(level, [&] { return levels_[level]->fit_matrix(); });
        for (std::size_t i = 0; i < size_; ++i) {
            for (std::size_t j = 0; j < size_; ++j) total(i, j) += k(i, j);
        }
    }
    return total;
}

Evaluation WeisfeilerLehmanFittedKernel::evaluate(std::span<const Graph> queries) const {
    const auto labelings = refinement_.apply(queries);
    Evaluation out;
    out.matrix = KernelMatrix::cross(queries.size(), size_);
    out.query_diagonal.assign(queries.size(), 0.0);
    for (std::size_t level = 0; level < levels_.size(); ++level) {
        const auto level_graphs = relabeled(queries, labelings[level]);
        auto e = at_level(level, [&] { return levels_[level]->evaluate(level_graphs); });
        for (std::size_t i = 0; i < queries.size(); ++i) {
            out.query_diagonal[i] += e.query_diagonal[i];
            for (std::size_t j = 0; j < size_; ++j) out.matrix(i, j) += e.matrix(i, j);
        }
        out.warnings.insert(out.warnings.end(), e.warnings.begin(), e.warnings.end());
    }
    return out;
}

}  // namespace gkl
