#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gkl {

using Vertex = std::size_t;
using Label = std::string;
using Attribute = std::vector<double>;

/// Unordered vertex pair stored with `first < second`.
struct Edge {
    Vertex first = 0;
    Vertex second = 0;

    Edge() = default;
    Edge(Vertex u, Vertex v) : first(u < v ? u : v), second(u < v ? v : u) {}

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Per-edge decorations keyed by the unordered pair.
template <typename T>
using EdgeMap = std::map<Edge, T>;

/// Optional labels and attributes supplied alongside an adjacency matrix or
/// an edge dictionary. Each present map must cover every vertex (edge).
struct Decorations {
    std::optional<std::vector<Label>> vertex_labels;
    std::optional<std::vector<Attribute>> vertex_attributes;
    std::optional<EdgeMap<Label>> edge_labels;
    std::optional<EdgeMap<Attribute>> edge_attributes;
};

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Edges are kept sorted; edge-aligned decorations follow the same order.
/// Construction rejects self-loops, duplicate edges, out-of-range endpoints,
/// partial label maps and ragged attribute vectors with ErrorKind::InvalidGraph.
class Graph {
public:
    Graph() = default;
    Graph(std::size_t n, std::vector<Edge> edges, Decorations decorations = {});

    [[nodiscard]] std::size_t order() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return edges_.size(); }
    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }

    /// Neighbors of `v` in ascending order.
    [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const;
    [[nodiscard]] std::size_t degree(Vertex v) const { return neighbors(v).size(); }
    [[nodiscard]] bool adjacent(Vertex u, Vertex v) const;
    /// Position of {u,v} in `edges()`, if present.
    [[nodiscard]] std::optional<std::size_t> edge_index(Vertex u, Vertex v) const;

    [[nodiscard]] bool has_vertex_labels() const noexcept { return vertex_labels_.has_value(); }
    [[nodiscard]] bool has_edge_labels() const noexcept { return edge_labels_.has_value(); }
    [[nodiscard]] bool has_vertex_attributes() const noexcept { return vertex_attributes_.has_value(); }
    [[nodiscard]] bool has_edge_attributes() const noexcept { return edge_attributes_.has_value(); }

    [[nodiscard]] const Label& vertex_label(Vertex v) const;
    [[nodiscard]] const Label& edge_label(std::size_t edge) const;
    [[nodiscard]] const std::optional<std::vector<Label>>& vertex_labels() const noexcept { return vertex_labels_; }
    [[nodiscard]] const std::optional<std::vector<Label>>& edge_labels() const noexcept { return edge_labels_; }
    [[nodiscard]] const std::optional<std::vector<Attribute>>& vertex_attributes() const noexcept {
        return vertex_attributes_;
    }
    [[nodiscard]] const std::optional<std::vector<Attribute>>& edge_attributes() const noexcept {
        return edge_attributes_;
    }

    /// Same structure and edge decorations, vertex labels replaced.
    [[nodiscard]] Graph with_vertex_labels(std::vector<Label> labels) const;

    friend bool operator==(const Graph& a, const Graph& b);

private:
    void build_adjacency();

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::optional<std::vector<Label>> vertex_labels_;
    std::optional<std::vector<Attribute>> vertex_attributes_;
    std::optional<std::vector<Label>> edge_labels_;
    std::optional<std::vector<Attribute>> edge_attributes_;
    // CSR adjacency: neighbors of v are adjacency_[offsets_[v] .. offsets_[v+1])
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> adjacency_;
};

/// 0/1 square matrix, row-major as nested vectors.
using AdjacencyMatrix = std::vector<std::vector<int>>;
/// Vertex -> neighbor list. May list each edge from one side only.
using EdgeDictionary = std::map<Vertex, std::vector<Vertex>>;

Graph from_adjacency(const AdjacencyMatrix& matrix, Decorations decorations = {});

/// Vertex count is `n` when given, otherwise one past the largest key.
Graph from_edge_dictionary(const EdgeDictionary& dict, std::optional<std::size_t> n = std::nullopt,
                           Decorations decorations = {});

[[nodiscard]] AdjacencyMatrix to_adjacency(const Graph& g);
/// Every vertex appears as a key; each edge is listed from both sides.
[[nodiscard]] EdgeDictionary to_edge_dictionary(const Graph& g);
/// Edge-keyed view of the decorations of `g`, suitable for reconstruction.
[[nodiscard]] Decorations decorations_of(const Graph& g);

/// All-pairs hop distances. Unreachable pairs carry a dedicated sentinel that
/// never compares equal to a distance.
class DistanceMatrix {
public:
    static constexpr std::int32_t kUnreachable = -1;

    explicit DistanceMatrix(std::size_t n);

    [[nodiscard]] std::size_t order() const noexcept { return n_; }
    [[nodiscard]] bool reachable(Vertex u, Vertex v) const { return raw(u, v) != kUnreachable; }
    /// Hop count, or nullopt when no path exists.
    [[nodiscard]] std::optional<std::uint32_t> at(Vertex u, Vertex v) const;
    [[nodiscard]] std::int32_t raw(Vertex u, Vertex v) const { return data_[u * n_ + v]; }
    void set(Vertex u, Vertex v, std::int32_t d) { data_[u * n_ + v] = d; }

    friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

private:
    std::size_t n_;
    std::vector<std::int32_t> data_;
};

[[nodiscard]] DistanceMatrix floyd_warshall(const Graph& g);

/// Induced subgraph on `subset` (duplicates ignored), vertices re-indexed in
/// ascending original order. Decorations are carried over.
[[nodiscard]] Graph induced_subgraph(const Graph& g, std::span<const Vertex> subset);

/// Direct (tensor) product graph. Product vertex (u, u') is numbered in
/// lexicographic order over the retained pairs; with `match_labels` only pairs
/// with equal vertex labels are retained and, when both factors carry edge
/// labels, only edges with equal labels are connected.
struct ProductGraph {
    Graph graph;
    std::vector<std::pair<Vertex, Vertex>> pairs;
};

[[nodiscard]] ProductGraph direct_product_with_pairs(const Graph& g, const Graph& h, bool match_labels);
[[nodiscard]] Graph direct_product(const Graph& g, const Graph& h, bool match_labels);

/// Canonical form for graphs of order <= 8: the lexicographically smallest
/// upper-triangle adjacency bit string over all vertex permutations.
struct CanonicalCode {
    std::size_t order = 0;
    std::uint64_t bits = 0;

    friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

inline constexpr std::size_t kMaxCanonicalOrder = 8;

/// Throws ErrorKind::SizeLimit for graphs with more than 8 vertices.
[[nodiscard]] CanonicalCode canonical_code(const Graph& g);

/// Canonical code of a k-vertex graph given as an upper-triangle bit mask
/// (pair (i,j), i<j, in row-major order maps to bit position in that order,
/// most significant first).
[[nodiscard]] CanonicalCode canonical_code_from_mask(std::size_t k, std::uint64_t mask);

/// Same layout as `canonical_code_from_mask`.
[[nodiscard]] std::uint64_t adjacency_mask(const Graph& g);

}  // namespace gkl
