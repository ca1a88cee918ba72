#pragma once

#include "gkl/kernel_spec.hpp"
#include "gkl/kernels/feature_kernel.hpp"
#include "gkl/random.hpp"

#include <cstdint>
#include <map>

namespace gkl {

/// Isomorphism classes of simple graphs on k vertices. Class ids follow the
/// order in which classes first appear when edge masks are enumerated from 0
/// upward, so class 0 is always the edgeless graph.
class GraphletTable {
public:
    /// k must be 3, 4 or 5 (InvalidSpec otherwise).
    explicit GraphletTable(std::size_t k);

    [[nodiscard]] std::size_t k() const noexcept { return k_; }
    [[nodiscard]] std::size_t class_count() const noexcept { return classes_.size(); }
    [[nodiscard]] const std::vector<CanonicalCode>& classes() const noexcept { return classes_; }
    /// Class of the k-vertex graph with the given upper-triangle mask.
    [[nodiscard]] std::size_t class_of_mask(std::uint64_t mask) const { return mask_class_.at(mask); }
    [[nodiscard]] std::size_t class_of(const CanonicalCode& code) const;

private:
    std::size_t k_;
    std::vector<CanonicalCode> classes_;
    std::map<CanonicalCode, std::size_t> code_class_;
    std::vector<std::uint16_t> mask_class_;
};

[[nodiscard]] GraphletTable build_graphlet_table(std::size_t k);

enum class GraphletMode { Sampled, Exhaustive };

struct GraphletCounts {
    FeatureMap counts;    ///< raw class counts (sum = C(n,k) or n_samples)
    double scale = 1.0;   ///< C(n,k) / n_samples when sampled, 1 otherwise
    GraphletMode mode = GraphletMode::Exhaustive;

    [[nodiscard]] FeatureMap features() const { return counts.scaled(scale); }
};

[[nodiscard]] double binomial(std::size_t n, std::size_t k);

/// Graphlet class counts of `g`. Labels are ignored. Graphs with fewer than k
/// vertices give an empty map. Throws InvalidSpec for n_samples == 0 in
/// sampled mode.
[[nodiscard]] GraphletCounts graphlet_counts(const Graph& g, const GraphletTable& table, std::size_t n_samples,
                                             GraphletMode mode, Rng& rng);

/// Mode selection: explicit override, else exhaustive when C(n,k) <= 2 * n_samples.
[[nodiscard]] GraphletMode choose_graphlet_mode(std::size_t n, const GraphletParams& params);

/// Hash of the vertex count and sorted edge list; labels are not included.
[[nodiscard]] std::uint64_t structure_hash(const Graph& g);

/// Per-graph randomness is derived from (seed, structure_hash), so a graph
/// gets the same sample wherever it appears: in the fit collection, in a
/// query batch, or twice in one collection.
class GraphletExtractor final : public FeatureExtractor {
public:
    GraphletExtractor(GraphletParams params, std::uint64_t seed);

    void require(const Graph&) const override {}
    std::vector<FeatureMap> fit_features(std::span<const Graph> graphs) override;
    [[nodiscard]] std::vector<FeatureMap> frozen_features(std::span<const Graph> graphs) const override;

    [[nodiscard]] const GraphletTable& table() const noexcept { return table_; }

private:
    GraphletParams params_;
    std::uint64_t seed_;
    GraphletTable table_;
};

}  // namespace gkl
