#pragma once

#include "gkl/kernels/feature_kernel.hpp"
#include "gkl/kernels/histogram.hpp"

#include <cstdint>
#include <functional>

namespace gkl {

/// Feature index of the shortest-path kernel: endpoint label ids ordered
/// (low <= high) and the hop distance between the endpoints (>= 1).
struct SpTriple {
    FeatureId low = 0;
    FeatureId high = 0;
    std::uint32_t distance = 0;

    friend bool operator==(const SpTriple&, const SpTriple&) = default;
};

struct SpTripleHash {
    std::size_t operator()(const SpTriple& t) const noexcept;
};

using SpTripleDictionary = Dictionary<SpTriple, SpTripleHash>;

struct ShortestPathDictionaries {
    LabelDictionary labels;
    SpTripleDictionary triples;
};

/// Counts (label pair, distance) over unordered reachable vertex pairs.
/// Without labels every vertex carries the same implicit label.
[[nodiscard]] FeatureMap shortest_path_features(const Graph& g, ShortestPathDictionaries& dict, bool with_labels);
[[nodiscard]] FeatureMap shortest_path_features_frozen(const Graph& g, const ShortestPathDictionaries& dict,
                                                       bool with_labels);

class ShortestPathExtractor final : public FeatureExtractor {
public:
    explicit ShortestPathExtractor(bool with_labels) : with_labels_(with_labels) {}

    void require(const Graph& g) const override;
    std::vector<FeatureMap> fit_features(std::span<const Graph> graphs) override;
    [[nodiscard]] std::vector<FeatureMap> frozen_features(std::span<const Graph> graphs) const override;

    [[nodiscard]] const ShortestPathDictionaries& dictionaries() const noexcept { return dict_; }

private:
    bool with_labels_;
    ShortestPathDictionaries dict_;
};

}  // namespace gkl
