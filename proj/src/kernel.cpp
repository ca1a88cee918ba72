#include "gkl/kernel.hpp"

#include "gkl/error.hpp"
#include "gkl/kernels/feature_kernel.hpp"
#include "gkl/kernels/graphlet.hpp"
#include "gkl/kernels/histogram.hpp"
#include "gkl/kernels/random_walk.hpp"
#include "gkl/kernels/shortest_path.hpp"
#include "gkl/kernels/weisfeiler_lehman.hpp"
#include "gkl/nystrom.hpp"

namespace gkl {

namespace {

class NormalizedFittedKernel final : public FittedKernel {
public:
    explicit NormalizedFittedKernel(std::shared_ptr<const FittedKernel> inner) : inner_(std::move(inner)) {
        const auto& raw = inner_->fit_diagonal();
        diagonal_.resize(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] < 0.0) {
                raise(ErrorKind::NumericalError, "graph " + std::to_string(i) + ": negative self-kernel " +
                                                     std::to_string(raw[i]));
            }
            if (raw[i] == 0.0) {
                warnings_.push_back({"fit graph " + std::to_string(i), "zero self-kernel; normalised row coerced to 0"});
            }
            diagonal_[i] = raw[i] > 0.0 ? 1.0 : 0.0;
        }
    }

    [[nodiscard]] std::size_t size() const override { return inner_->size(); }
    [[nodiscard]] const std::vector<double>& fit_diagonal() const override { return diagonal_; }

    [[nodiscard]] KernelMatrix fit_matrix() const override {
        const auto& d = inner_->fit_diagonal();
        return normalize_matrix(inner_->fit_matrix(), d, d);
    }

    [[nodiscard]] Evaluation evaluate(std::span<const Graph> queries) const override {
        auto e = inner_->evaluate(queries);
        Evaluation out;
        out.matrix = normalize_matrix(e.matrix, e.query_diagonal, inner_->fit_diagonal());
        out.query_diagonal.resize(e.query_diagonal.size());
        out.warnings = std::move(e.warnings);
        for (std::size_t i = 0; i < e.query_diagonal.size(); ++i) {
            out.query_diagonal[i] = e.query_diagonal[i] > 0.0 ? 1.0 : 0.0;
            if (e.query_diagonal[i] == 0.0) {
                out.warnings.push_back(
                    {"query graph " + std::to_string(i), "zero self-kernel; normalised row coerced to 0"});
            }
        }
        return out;
    }

    [[nodiscard]] std::vector<Warning> fit_warnings() const override {
        auto w = inner_->fit_warnings();
        w.insert(w.end(), warnings_.begin(), warnings_.end());
        return w;
    }

private:
    std::shared_ptr<const FittedKernel> inner_;
    std::vector<double> diagonal_;
    std::vector<Warning> warnings_;
};

}  // namespace

std::shared_ptr<const FittedKernel> normalized(std::shared_ptr<const FittedKernel> inner) {
    return std::make_shared<NormalizedFittedKernel>(std::move(inner));
}

std::shared_ptr<const FittedKernel> fit_base(const KernelSpec& spec, std::span<const Graph> graphs) {
    validate(spec);
    if (graphs.empty()) raise(ErrorKind::EmptyCollection, "cannot fit on an empty collection");
    switch (spec.kind) {
        case KernelKind::VertexHistogram:
            return std::make_shared<FeatureFittedKernel>(std::make_unique<VertexHistogramExtractor>(), graphs);
        case KernelKind::EdgeHistogram:
            return std::make_shared<FeatureFittedKernel>(std::make_unique<EdgeHistogramExtractor>(), graphs);
        case KernelKind::ShortestPath:
            return std::make_shared<FeatureFittedKernel>(
                std::make_unique<ShortestPathExtractor>(shortest_path_params(spec).with_labels), graphs);
        case KernelKind::GraphletSampling:
            return std::make_shared<FeatureFittedKernel>(
                std::make_unique<GraphletExtractor>(graphlet_params(spec), spec.seed), graphs);
        case KernelKind::RandomWalk:
            return std::make_shared<RandomWalkFittedKernel>(random_walk_params(spec), graphs);
        case KernelKind::WeisfeilerLehman:
            return std::make_shared<WeisfeilerLehmanFittedKernel>(weisfeiler_lehman_params(spec), graphs);
    }
    raise(ErrorKind::InvalidSpec, "unhandled kernel kind");
}

std::shared_ptr<const FittedKernel> fit(const KernelSpec& spec, std::span<const Graph> graphs) {
    auto fitted = fit_base(spec, graphs);
    if (spec.normalize) fitted = normalized(std::move(fitted));
    if (spec.nystrom_components) {
        fitted = std::make_shared<NystromFittedKernel>(std::move(fitted), *spec.nystrom_components, spec.seed);
    }
    return fitted;
}

KernelMatrix transform(const FittedKernel& fitted, std::span<const Graph> graphs) {
    return fitted.evaluate(graphs).matrix;
}

GraphKernel::GraphKernel(KernelSpec spec) : spec_(std::move(spec)) { validate(spec_); }

GraphKernel& GraphKernel::fit(std::span<const Graph> graphs) {
    fitted_ = gkl::fit(spec_, graphs);
    query_diagonal_.reset();
    warnings_ = fitted_->fit_warnings();
    return *this;
}

KernelMatrix GraphKernel::fit_transform(std::span<const Graph> graphs) {
    fit(graphs);
    return fitted_->fit_matrix();
}

KernelMatrix GraphKernel::transform(std::span<const Graph> graphs) {
    if (!fitted_) raise(ErrorKind::NotFitted, "transform called before fit");
    auto e = fitted_->evaluate(graphs);
    query_diagonal_ = std::move(e.query_diagonal);
    warnings_ = fitted_->fit_warnings();
    warnings_.insert(warnings_.end(), e.warnings.begin(), e.warnings.end());
    return std::move(e.matrix);
}

Diagonal GraphKernel::diagonal() const {
    if (!fitted_) raise(ErrorKind::NotFitted, "diagonal called before fit");
    return {fitted_->fit_diagonal(), query_diagonal_};
}

GraphKernel make_kernel(const KernelSpec& spec) { return GraphKernel(spec); }

}  // namespace gkl
