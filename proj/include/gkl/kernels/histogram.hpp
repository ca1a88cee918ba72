#pragma once

#include "gkl/kernels/feature_kernel.hpp"

namespace gkl {

using LabelDictionary = Dictionary<Label>;

/// Label-id -> occurrence count. Growing variant interns unseen labels.
[[nodiscard]] FeatureMap vertex_histogram_features(const Graph& g, LabelDictionary& dict);
/// Frozen variant: unseen labels get fresh ids outside the fitted range.
[[nodiscard]] FeatureMap vertex_histogram_features_frozen(const Graph& g, const LabelDictionary& dict);

/// Edge-label-id -> count, each undirected edge counted once.
[[nodiscard]] FeatureMap edge_histogram_features(const Graph& g, LabelDictionary& dict);
[[nodiscard]] FeatureMap edge_histogram_features_frozen(const Graph& g, const LabelDictionary& dict);

class VertexHistogramExtractor final : public FeatureExtractor {
public:
    void require(const Graph& g) const override;
    std::vector<FeatureMap> fit_features(std::span<const Graph> graphs) override;
    [[nodiscard]] std::vector<FeatureMap> frozen_features(std::span<const Graph> graphs) const override;

    [[nodiscard]] const LabelDictionary& dictionary() const noexcept { return labels_; }

private:
    LabelDictionary labels_;
};

class EdgeHistogramExtractor final : public FeatureExtractor {
public:
    void require(const Graph& g) const override;
    std::vector<FeatureMap> fit_features(std::span<const Graph> graphs) override;
    [[nodiscard]] std::vector<FeatureMap> frozen_features(std::span<const Graph> graphs) const override;

    [[nodiscard]] const LabelDictionary& dictionary() const noexcept { return labels_; }

private:
    LabelDictionary labels_;
};

}  // namespace gkl
