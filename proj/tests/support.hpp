#pragma once

#include "gkl/datasets.hpp"
#include "gkl/error.hpp"
#include "gkl/graph.hpp"
#include "gkl/kernel_spec.hpp"
#include "gkl/random.hpp"

#include <unistd.h>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace support {

using gkl::Edge;
using gkl::Graph;

inline std::vector<std::string> repeat(std::size_t n, const std::string& label) { return std::vector<std::string>(n, label); }

inline Graph labeled(std::size_t n, std::vector<Edge> edges, std::vector<std::string> labels) {
    gkl::Decorations d;
    d.vertex_labels = std::move(labels);
    return Graph(n, std::move(edges), std::move(d));
}

inline Graph path(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, e);
}

inline Graph cycle(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, e);
}

inline Graph complete(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, e);
}

inline Graph with_labels(const Graph& g, std::vector<std::string> labels) { return g.with_vertex_labels(std::move(labels)); }

/// G(n, p) with vertex labels drawn from `alphabet` symbols (none if 0) and,
/// optionally, edge labels from `edge_alphabet` symbols.
inline Graph random_graph(gkl::Rng& rng, std::size_t n, double p, std::size_t alphabet = 0,
                          std::size_t edge_alphabet = 0) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (gkl::uniform_unit(rng) < p) edges.emplace_back(i, j);
    gkl::Decorations d;
    if (alphabet > 0) {
        std::vector<std::string> labels(n);
        for (auto& l : labels) l = std::string(1, static_cast<char>('a' + gkl::uniform_below(rng, alphabet)));
        d.vertex_labels = labels;
    }
    if (edge_alphabet > 0) {
        gkl::EdgeMap<std::string> el;
        for (const auto& e : edges) el[e] = std::string(1, static_cast<char>('x' + gkl::uniform_below(rng, edge_alphabet)));
        d.edge_labels = el;
    }
    return Graph(n, edges, d);
}

/// Same graph with vertices renamed by `perm` (old v becomes perm[v]).
inline Graph permuted(const Graph& g, const std::vector<std::size_t>& perm) {
    std::vector<Edge> edges;
    gkl::Decorations d;
    if (g.has_edge_labels()) d.edge_labels.emplace();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto& e = g.edges()[i];
        const Edge pe(perm[e.first], perm[e.second]);
        edges.push_back(pe);
        if (g.has_edge_labels()) (*d.edge_labels)[pe] = g.edge_label(i);
    }
    if (g.has_vertex_labels()) {
        std::vector<std::string> labels(g.order());
        for (std::size_t v = 0; v < g.order(); ++v) labels[perm[v]] = g.vertex_label(v);
        d.vertex_labels = labels;
    }
    return Graph(g.order(), edges, d);
}

inline std::vector<std::size_t> random_permutation(gkl::Rng& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    gkl::shuffle(std::span(p), rng);
    return p;
}

inline std::filesystem::path data_dir() { return GKL_TEST_DATA_DIR; }

inline const gkl::DatasetBundle& mutag() {
    static const gkl::DatasetBundle bundle = gkl::parse_tu(data_dir() / "MUTAG", "MUTAG");
    return bundle;
}

inline std::vector<Graph> mutag_subset(std::size_t count) {
    const auto& all = mutag().graphs;
    return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(std::min(count, all.size()))};
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
    static int counter = 0;
    auto p = std::filesystem::temp_directory_path() /
             ("gkl_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace support

namespace support {

/// One spec per kernel kind, with parameters that keep random_walk convergent
/// and make graphlet_sampling actually sample on graphs above ~8 vertices.
inline std::vector<gkl::KernelSpec> all_kernel_specs(std::uint64_t seed = 7) {
    std::vector<gkl::KernelSpec> specs;
    for (auto kind : gkl::kAllKernelKinds) {
        gkl::KernelSpec s;
        s.kind = kind;
        s.seed = seed;
        if (kind == gkl::KernelKind::GraphletSampling) s.set("k", 4.0).set("n_samples", 40.0);
        if (kind == gkl::KernelKind::RandomWalk) s.set("lambda", 0.005);
        if (kind == gkl::KernelKind::WeisfeilerLehman) s.set("h", 3.0);
        specs.push_back(s);
    }
    return specs;
}

inline std::string name_of(const gkl::KernelSpec& s) { return std::string(gkl::to_string(s.kind)); }

/// Kind of the gkl::Error thrown by `fn`; nullopt if it returns normally.
template <typename Fn>
std::optional<gkl::ErrorKind> kind_of(Fn&& fn) {
    try {
        fn();
    } catch (const gkl::Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

}  // namespace support
