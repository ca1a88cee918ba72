#include "gkl/error.hpp"
#include "gkl/kernel.hpp"
#include "gkl/kernels/histogram.hpp"
#include "support.hpp"

#include <doctest.h>

#include <map>

using namespace gkl;

namespace {

Graph edge_labeled(std::size_t n, std::vector<Edge> edges, std::vector<std::string> labels) {
    Decorations d;
    EdgeMap<Label> m;
    for (std::size_t i = 0; i < edges.size(); ++i) m[edges[i]] = labels[i];
    d.edge_labels = m;
    return Graph(n, std::move(edges), d);
}

double brute_vertex_kernel(const Graph& g, const Graph& h) {
    double k = 0.0;
    for (Vertex u = 0; u < g.order(); ++u)
        for (Vertex v = 0; v < h.order(); ++v) k += g.vertex_label(u) == h.vertex_label(v);
    return k;
}

double brute_edge_kernel(const Graph& g, const Graph& h) {
    double k = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j) k += g.edge_label(i) == h.edge_label(j);
    return k;
}

}  // namespace

TEST_CASE("vertex histogram examples") {
    LabelDictionary dict;
    const auto tri = support::labeled(3, {Edge(0, 1), Edge(1, 2), Edge(0, 2)}, {"a", "a", "b"});
    const auto f = vertex_histogram_features(tri, dict);
    CHECK(f.get(*dict.find("a")) == 2.0);
    CHECK(f.get(*dict.find("b")) == 1.0);
    CHECK(f.squared_norm() == 5.0);

    const auto z = vertex_histogram_features(support::labeled(1, {}, {"z"}), dict);
    CHECK(z.entries() == std::vector<FeatureMap::Entry>{{*dict.find("z"), 1.0}});

    const LabelDictionary& frozen = dict;
    const auto q = vertex_histogram_features_frozen(support::labeled(2, {}, {"a", "new"}), frozen);
    CHECK(q.get(*dict.find("a")) == 1.0);
    CHECK(q.get(kFreshIdBase) == 1.0);
    CHECK(dict.size() == 3);

    VertexHistogramExtractor ex;
    CHECK_THROWS_AS(ex.require(support::path(2)), Error);
}

TEST_CASE("edge histogram examples") {
    LabelDictionary dict;
    const auto tri = edge_labeled(3, {Edge(0, 1), Edge(1, 2), Edge(0, 2)}, {"x", "x", "y"});
    const auto f = edge_histogram_features(tri, dict);
    CHECK(f.get(*dict.find("x")) == 2.0);
    CHECK(f.get(*dict.find("y")) == 1.0);

    Decorations none;
    none.edge_labels = EdgeMap<Label>{};
    const auto edgeless = Graph(3, {}, none);
    CHECK(edge_histogram_features(edgeless, dict).empty());

    const std::vector<Graph> graphs{tri, edge_labeled(2, {Edge(0, 1)}, {"x"})};
    KernelSpec spec;
    spec.kind = KernelKind::EdgeHistogram;
    const auto k = GraphKernel(spec).fit_transform(graphs);
    CHECK(k(0, 1) == 2.0);
    CHECK(k(0, 0) == 5.0);

    const std::vector<Graph> bad{support::path(3)};
    CHECK_THROWS_AS((void)GraphKernel(spec).fit_transform(bad), Error);
}

TEST_CASE("histogram kernels match brute force and are permutation invariant") {
    Rng rng = derive_rng(21, 0);
    KernelSpec vspec;
    vspec.kind = KernelKind::VertexHistogram;
    KernelSpec espec;
    espec.kind = KernelKind::EdgeHistogram;
    for (int t = 0; t < 30; ++t) {
        std::vector<Graph> graphs;
        for (int i = 0; i < 5; ++i) graphs.push_back(support::random_graph(rng, 1 + uniform_below(rng, 10), 0.4, 4, 3));
        const auto kv = GraphKernel(vspec).fit_transform(graphs);
        const auto ke = GraphKernel(espec).fit_transform(graphs);
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            for (std::size_t j = 0; j < graphs.size(); ++j) {
                CHECK(kv(i, j) == brute_vertex_kernel(graphs[i], graphs[j]));
                CHECK(ke(i, j) == brute_edge_kernel(graphs[i], graphs[j]));
            }
        }
        LabelDictionary d1;
        LabelDictionary d2;
        const auto& g = graphs[0];
        const auto pg = support::permuted(g, support::random_permutation(rng, g.order()));
        const auto fv = vertex_histogram_features(g, d1);
        CHECK(vertex_histogram_features_frozen(pg, d1) == fv);
        const auto fe = edge_histogram_features(g, d2);
        CHECK(edge_histogram_features_frozen(pg, d2) == fe);
    }
}
