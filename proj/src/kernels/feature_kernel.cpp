#include "gkl/kernels/feature_kernel.hpp"

#include "gkl/error.hpp"
#include "gkl/parallel.hpp"

namespace gkl {

void check_requirements(const FeatureExtractor& extractor, std::span<const Graph> graphs) {
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        try {
            extractor.require(graphs[i]);
        } catch (const Error& e) {
            raise(e.kind(), "graph " + std::to_string(i) + ": " + e.detail());
        }
    }
}

KernelMatrix feature_gram(std::span<const FeatureMap> a, std::span<const FeatureMap> b, MatrixRole role) {
    KernelMatrix k(a.size(), b.size(), role);
    if (role == MatrixRole::FitSquare) {
        if (a.data() != b.data() || a.size() != b.size()) {
            raise(ErrorKind::InvalidShape, "a square Gram matrix needs one feature collection");
        }
        parallel_for(a.size(), [&](std::size_t i) {
            for (std::size_t j = i; j < b.size(); ++j) k(i, j) = a[i].dot(b[j]);
        });
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) k(i, j) = k(j, i);
        }
        return k;
    }
    parallel_for(a.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < b.size(); ++j) k(i, j) = a[i].dot(b[j]);
    });
    return k;
}

FeatureFittedKernel::FeatureFittedKernel(std::unique_ptr<FeatureExtractor> extractor, std::span<const Graph> graphs)
    : extractor_(std::move(extractor)) {
    if (graphs.empty()) raise(ErrorKind::EmptyCollection, "cannot fit on an empty collection");
    check_requirements(*extractor_, graphs);
    features_ = extractor_->fit_features(graphs);
    diagonal_.reserve(features_.size());
    for (const auto& f : features_) diagonal_.push_back(f.squared_norm());
}

KernelMatrix FeatureFittedKernel::fit_matrix() const {
    return feature_gram(features_, features_, MatrixRole::FitSquare);
}

Evaluation FeatureFittedKernel::evaluate(std::span<const Graph> queries) const {
    check_requirements(*extractor_, queries);
    const auto query_features = extractor_->frozen_features(queries);
    Evaluation out;
    out.matrix = feature_gram(query_features, features_, MatrixRole::Cross);
    out.query_diagonal.reserve(query_features.size());
    for (const auto& f : query_features) out.query_diagonal.push_back(f.squared_norm());
    return out;
}

}  // namespace gkl
