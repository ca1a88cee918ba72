#pragma once

#include "gkl/feature_map.hpp"
#include "gkl/kernel.hpp"

#include <memory>
#include <span>
#include <vector>

namespace gkl {

/// Explicit feature extraction for kernels of the form k(g,h) = <phi(g), phi(h)>.
/// `fit_features` runs once and may grow the extractor's dictionaries;
/// afterwards only `frozen_features` is used.
class FeatureExtractor {
public:
    virtual ~FeatureExtractor() = default;

    /// Throws IncompatibleInput (without index) when `g` cannot be handled.
    virtual void require(const Graph& g) const = 0;
    virtual std::vector<FeatureMap> fit_features(std::span<const Graph> graphs) = 0;
    [[nodiscard]] virtual std::vector<FeatureMap> frozen_features(std::span<const Graph> graphs) const = 0;
};

/// Rethrows the extractor's requirement failure with the graph index attached.
void check_requirements(const FeatureExtractor& extractor, std::span<const Graph> graphs);

/// Gram block <a_i, b_j>. With `symmetric`, a and b must be the same span and
/// only the upper triangle is computed, then mirrored.
[[nodiscard]] KernelMatrix feature_gram(std::span<const FeatureMap> a, std::span<const FeatureMap> b,
                                        MatrixRole role);

class FeatureFittedKernel final : public FittedKernel {
public:
    FeatureFittedKernel(std::unique_ptr<FeatureExtractor> extractor, std::span<const Graph> graphs);

    [[nodiscard]] std::size_t size() const override { return features_.size(); }
    [[nodiscard]] const std::vector<double>& fit_diagonal() const override { return diagonal_; }
    [[nodiscard]] KernelMatrix fit_matrix() const override;
    [[nodiscard]] Evaluation evaluate(std::span<const Graph> queries) const override;

    [[nodiscard]] const std::vector<FeatureMap>& features() const noexcept { return features_; }
    [[nodiscard]] const FeatureExtractor& extractor() const noexcept { return *extractor_; }

private:
    std::unique_ptr<FeatureExtractor> extractor_;
    std::vector<FeatureMap> features_;
    std::vector<double> diagonal_;
};

}  // namespace gkl
