#include "gkl/graph.hpp"

#include "gkl/error.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace gkl {

namespace {

std::string edge_str(const Edge& e) { return "{" + std::to_string(e.first) + "," + std::to_string(e.second) + "}"; }

void check_uniform_dimension(const std::vector<Attribute>& attrs, const char* what) {
    if (attrs.empty()) return;
    const auto dim = attrs.front().size();
    for (const auto& a : attrs) {
        if (a.size() != dim) {
            raise(ErrorKind::InvalidGraph, std::string(what) + " vectors have differing dimensions");
        }
    }
}

template <typename T>
std::vector<T> align_edge_map(const EdgeMap<T>& map, const std::vector<Edge>& edges, const char* what) {
    if (map.size() != edges.size()) {
        raise(ErrorKind::InvalidGraph, std::string(what) + " map has " + std::to_string(map.size()) +
                                           " entries for " + std::to_string(edges.size()) + " edges");
    }
    std::vector<T> out;
    out.reserve(edges.size());
    for (const auto& e : edges) {
        auto it = map.find(e);
        if (it == map.end()) raise(ErrorKind::InvalidGraph, std::string(what) + " missing for edge " + edge_str(e));
        out.push_back(it->second);
    }
    return out;
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges, Decorations decorations) : n_(n), edges_(std::move(edges)) {
    for (const auto& e : edges_) {
        if (e.first == e.second) raise(ErrorKind::InvalidGraph, "self-loop at vertex " + std::to_string(e.first));
        if (e.second >= n_) {
            raise(ErrorKind::InvalidGraph,
                  "edge " + edge_str(e) + " references a vertex outside 0.." + std::to_string(n_ == 0 ? 0 : n_ - 1));
        }
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
        raise(ErrorKind::InvalidGraph, "duplicate edge " + edge_str(*dup));
    }

    if (decorations.vertex_labels) {
        if (decorations.vertex_labels->size() != n_) {
            raise(ErrorKind::InvalidGraph, "vertex label map covers " + std::to_string(decorations.vertex_labels->size()) +
                                               " of " + std::to_string(n_) + " vertices");
        }
        vertex_labels_ = std::move(decorations.vertex_labels);
    }
    if (decorations.vertex_attributes) {
        if (decorations.vertex_attributes->size() != n_) {
            raise(ErrorKind::InvalidGraph, "vertex attribute map does not cover every vertex");
        }
        check_uniform_dimension(*decorations.vertex_attributes, "vertex attribute");
        vertex_attributes_ = std::move(decorations.vertex_attributes);
    }
    if (decorations.edge_labels) edge_labels_ = align_edge_map(*decorations.edge_labels, edges_, "edge label");
    if (decorations.edge_attributes) {
        edge_attributes_ = align_edge_map(*decorations.edge_attributes, edges_, "edge attribute");
        check_uniform_dimension(*edge_attributes_, "edge attribute");
    }
    build_adjacency();
}

void Graph::build_adjacency() {
    offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) {
        ++offsets_[e.first + 1];
        ++offsets_[e.second + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adjacency_.resize(2 * edges_.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
        adjacency_[fill[e.first]++] = e.second;
        adjacency_[fill[e.second]++] = e.first;
    }
    for (std::size_t v = 0; v < n_; ++v) {
        std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                  adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
    }
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_.at(v), offsets_[v + 1] - offsets_[v]};
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<std::size_t> Graph::edge_index(Vertex u, Vertex v) const {
    if (u == v) return std::nullopt;
    const Edge key(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
}

const Label& Graph::vertex_label(Vertex v) const {
    if (!vertex_labels_) raise(ErrorKind::IncompatibleInput, "graph has no vertex labels");
    return vertex_labels_->at(v);
}

const Label& Graph::edge_label(std::size_t edge) const {
    if (!edge_labels_) raise(ErrorKind::IncompatibleInput, "graph has no edge labels");
    return edge_labels_->at(edge);
}

Graph Graph::with_vertex_labels(std::vector<Label> labels) const {
    if (labels.size() != n_) raise(ErrorKind::InvalidGraph, "relabeling does not cover every vertex");
    Graph g = *this;
    g.vertex_labels_ = std::move(labels);
    return g;
}

bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.vertex_labels_ == b.vertex_labels_ &&
           a.vertex_attributes_ == b.vertex_attributes_ && a.edge_labels_ == b.edge_labels_ &&
           a.edge_attributes_ == b.edge_attributes_;
}

Graph from_adjacency(const AdjacencyMatrix& matrix, Decorations decorations) {
    const std::size_t n = matrix.size();
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        if (matrix[u].size() != n) {
            raise(ErrorKind::InvalidGraph, "adjacency matrix is not square (row " + std::to_string(u) + " has " +
                                               std::to_string(matrix[u].size()) + " entries, expected " +
                                               std::to_string(n) + ")");
        }
    }
    for (std::size_t u = 0; u < n; ++u) {
        if (matrix[u][u] != 0) raise(ErrorKind::InvalidGraph, "nonzero diagonal entry at " + std::to_string(u));
        for (std::size_t v = 0; v < n; ++v) {
            const int x = matrix[u][v];
            if (x != 0 && x != 1) raise(ErrorKind::InvalidGraph, "adjacency entries must be 0 or 1");
            if (x != matrix[v][u]) {
                raise(ErrorKind::InvalidGraph,
                      "adjacency matrix is asymmetric at (" + std::to_string(u) + "," + std::to_string(v) + ")");
            }
            if (u < v && x == 1) edges.emplace_back(u, v);
        }
    }
    return Graph(n, std::move(edges), std::move(decorations));
}

Graph from_edge_dictionary(const EdgeDictionary& dict, std::optional<std::size_t> n, Decorations decorations) {
    std::size_t order = n.value_or(0);
    if (!n) {
        for (const auto& [v, nb] : dict) order = std::max(order, v + 1);
    }
    std::vector<Edge> edges;
    for (const auto& [u, nb] : dict) {
        if (u >= order) raise(ErrorKind::InvalidGraph, "dangling vertex id " + std::to_string(u));
        for (Vertex v : nb) {
            if (v >= order) raise(ErrorKind::InvalidGraph, "dangling vertex id " + std::to_string(v));
            edges.emplace_back(u, v);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph(order, std::move(edges), std::move(decorations));
}

AdjacencyMatrix to_adjacency(const Graph& g) {
    AdjacencyMatrix m(g.order(), std::vector<int>(g.order(), 0));
    for (const auto& e : g.edges()) m[e.first][e.second] = m[e.second][e.first] = 1;
    return m;
}

EdgeDictionary to_edge_dictionary(const Graph& g) {
    EdgeDictionary d;
    for (Vertex v = 0; v < g.order(); ++v) {
        auto nb = g.neighbors(v);
        d[v] = std::vector<Vertex>(nb.begin(), nb.end());
    }
    return d;
}

Decorations decorations_of(const Graph& g) {
    Decorations d;
    d.vertex_labels = g.vertex_labels();
    d.vertex_attributes = g.vertex_attributes();
    if (g.has_edge_labels()) {
        d.edge_labels.emplace();
        for (std::size_t i = 0; i < g.size(); ++i) (*d.edge_labels)[g.edges()[i]] = g.edge_label(i);
    }
    if (g.has_edge_attributes()) {
        d.edge_attributes.emplace();
        for (std::size_t i = 0; i < g.size(); ++i) (*d.edge_attributes)[g.edges()[i]] = (*g.edge_attributes())[i];
    }
    return d;
}

DistanceMatrix::DistanceMatrix(std::size_t n) : n_(n), data_(n * n, kUnreachable) {
    for (std::size_t v = 0; v < n; ++v) data_[v * n + v] = 0;
}

std::optional<std::uint32_t> DistanceMatrix::at(Vertex u, Vertex v) const {
    const auto d = raw(u, v);
    if (d == kUnreachable) return std::nullopt;
    return static_cast<std::uint32_t>(d);
}

DistanceMatrix floyd_warshall(const Graph& g) {
    const std::size_t n = g.order();
    DistanceMatrix dist(n);
    for (const auto& e : g.edges()) {
        dist.set(e.first, e.second, 1);
        dist.set(e.second, e.first, 1);
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto dik = dist.raw(i, k);
            if (dik == DistanceMatrix::kUnreachable) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const auto dkj = dist.raw(k, j);
                if (dkj == DistanceMatrix::kUnreachable) continue;
                const auto dij = dist.raw(i, j);
                if (dij == DistanceMatrix::kUnreachable || dik + dkj < dij) dist.set(i, j, dik + dkj);
            }
        }
    }
    return dist;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> subset) {
    std::vector<Vertex> keep(subset.begin(), subset.end());
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (!keep.empty() && keep.back() >= g.order()) {
        raise(ErrorKind::InvalidGraph, "subset vertex " + std::to_string(keep.back()) + " out of range");
    }
    std::vector<std::optional<Vertex>> remap(g.order());
    for (std::size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = i;

    std::vector<Edge> edges;
    Decorations d;
    if (g.has_vertex_labels()) {
        d.vertex_labels.emplace();
        for (Vertex v : keep) d.vertex_labels->push_back(g.vertex_label(v));
    }
    if (g.has_vertex_attributes()) {
        d.vertex_attributes.emplace();
        for (Vertex v : keep) d.vertex_attributes->push_back((*g.vertex_attributes())[v]);
    }
    if (g.has_edge_labels()) d.edge_labels.emplace();
    if (g.has_edge_attributes()) d.edge_attributes.emplace();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto& e = g.edges()[i];
        if (!remap[e.first] || !remap[e.second]) continue;
        const Edge ne(*remap[e.first], *remap[e.second]);
        edges.push_back(ne);
        if (d.edge_labels) (*d.edge_labels)[ne] = g.edge_label(i);
        if (d.edge_attributes) (*d.edge_attributes)[ne] = (*g.edge_attributes())[i];
    }
    return Graph(keep.size(), std::move(edges), std::move(d));
}

ProductGraph direct_product_with_pairs(const Graph& g, const Graph& h, bool match_labels) {
    if (match_labels && (!g.has_vertex_labels() || !h.has_vertex_labels())) {
        raise(ErrorKind::IncompatibleInput, "label-matching product requires vertex labels on both graphs");
    }
    const std::size_t nh = h.order();
    ProductGraph out;
    std::vector<std::optional<Vertex>> index(g.order() * nh);
    for (Vertex u = 0; u < g.order(); ++u) {
        for (Vertex w = 0; w < nh; ++w) {
            if (match_labels && g.vertex_label(u) != h.vertex_label(w)) continue;
            index[u * nh + w] = out.pairs.size();
            out.pairs.emplace_back(u, w);
        }
    }
    const bool compare_edges = match_labels && g.has_edge_labels() && h.has_edge_labels();
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto& e = g.edges()[i];
        for (std::size_t j = 0; j < h.size(); ++j) {
            const auto& f = h.edges()[j];
            if (compare_edges && g.edge_label(i) != h.edge_label(j)) continue;
            // Each factor-edge pair yields the two orientations (u,u')-(v,v') and (u,v')-(v,u').
            const auto a = index[e.first * nh + f.first];
            const auto b = index[e.second * nh + f.second];
            if (a && b) edges.emplace_back(*a, *b);
            const auto c = index[e.first * nh + f.second];
            const auto d = index[e.second * nh + f.first];
            if (c && d) edges.emplace_back(*c, *d);
        }
    }
    out.graph = Graph(out.pairs.size(), std::move(edges));
    return out;
}

Graph direct_product(const Graph& g, const Graph& h, bool match_labels) {
    return direct_product_with_pairs(g, h, match_labels).graph;
}

std::uint64_t adjacency_mask(const Graph& g) {
    const std::size_t n = g.order();
    if (n > kMaxCanonicalOrder) {
        raise(ErrorKind::SizeLimit, "canonical codes are limited to " + std::to_string(kMaxCanonicalOrder) +
                                        " vertices, got " + std::to_string(n));
    }
    const std::size_t pairs = n * (n - (n > 0 ? 1 : 0)) / 2;
    std::uint64_t mask = 0;
    std::size_t pos = 0;
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = i + 1; j < n; ++j, ++pos) {
            if (g.adjacent(i, j)) mask |= std::uint64_t{1} << (pairs - 1 - pos);
        }
    }
    return mask;
}

CanonicalCode canonical_code_from_mask(std::size_t k, std::uint64_t mask) {
    if (k > kMaxCanonicalOrder) {
        raise(ErrorKind::SizeLimit, "canonical codes are limited to " + std::to_string(kMaxCanonicalOrder) +
                                        " vertices, got " + std::to_string(k));
    }
    if (k < 2) return {k, 0};
    const std::size_t pairs = k * (k - 1) / 2;
    bool adj[kMaxCanonicalOrder][kMaxCanonicalOrder] = {};
    std::size_t pos = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j, ++pos) {
            adj[i][j] = adj[j][i] = (mask >> (pairs - 1 - pos)) & 1U;
        }
    }
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = ~std::uint64_t{0};
    do {
        std::uint64_t code = 0;
        pos = 0;
        for (std::size_t i = 0; i < k && code <= best; ++i) {
            for (std::size_t j = i + 1; j < k; ++j, ++pos) {
                if (adj[perm[i]][perm[j]]) code |= std::uint64_t{1} << (pairs - 1 - pos);
            }
        }
        best = std::min(best, code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {k, best};
}

CanonicalCode canonical_code(const Graph& g) { return canonical_code_from_mask(g.order(), adjacency_mask(g)); }

}  // namespace gkl
