#pragma once

#include "gkl/error.hpp"
#include "gkl/graph.hpp"
#include "gkl/kernel_matrix.hpp"
#include "gkl/kernel_spec.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gkl {

/// Kernel values of a query collection against a fitted collection.
struct Evaluation {
    KernelMatrix matrix;                 ///< m x n, entry (i,j) = k(query_i, fit_j)
    std::vector<double> query_diagonal;  ///< k(query_i, query_i)
    std::vector<Warning> warnings;
};

/// State produced by fitting a kernel on a collection. Immutable once
/// constructed: `evaluate` may be called concurrently.
class FittedKernel {
public:
    virtual ~FittedKernel() = default;

    [[nodiscard]] virtual std::size_t size() const = 0;
    [[nodiscard]] virtual const std::vector<double>& fit_diagonal() const = 0;
    [[nodiscard]] virtual KernelMatrix fit_matrix() const = 0;
    [[nodiscard]] virtual Evaluation evaluate(std::span<const Graph> queries) const = 0;
    [[nodiscard]] virtual std::vector<Warning> fit_warnings() const { return {}; }
};

/// Fit with full composition (base kernel -> normalisation -> Nystrom).
/// Throws EmptyCollection for an empty input and IncompatibleInput naming the
/// first graph that violates the kernel's requirements.
[[nodiscard]] std::shared_ptr<const FittedKernel> fit(const KernelSpec& spec, std::span<const Graph> graphs);
/// Base kernel only; normalisation and Nystrom flags in `spec` are ignored.
[[nodiscard]] std::shared_ptr<const FittedKernel> fit_base(const KernelSpec& spec, std::span<const Graph> graphs);
[[nodiscard]] KernelMatrix transform(const FittedKernel& fitted, std::span<const Graph> graphs);

/// Composes cosine normalisation onto a fitted kernel.
[[nodiscard]] std::shared_ptr<const FittedKernel> normalized(std::shared_ptr<const FittedKernel> inner);

struct Diagonal {
    std::vector<double> fit;
    std::optional<std::vector<double>> query;
};

/// Stateful estimator wrapping any kernel behind fit / fit_transform /
/// transform / diagonal. diagonal() reports the self-kernels of the composed
/// kernel; the query part reflects the most recent transform only.
class GraphKernel {
public:
    explicit GraphKernel(KernelSpec spec);

    GraphKernel& fit(std::span<const Graph> graphs);
    KernelMatrix fit_transform(std::span<const Graph> graphs);
    /// Throws NotFitted before fit.
    KernelMatrix transform(std::span<const Graph> graphs);
    [[nodiscard]] Diagonal diagonal() const;

    [[nodiscard]] bool fitted() const noexcept { return fitted_ != nullptr; }
    [[nodiscard]] const KernelSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] std::shared_ptr<const FittedKernel> state() const noexcept { return fitted_; }
    /// Warnings from the last fit and transform.
    [[nodiscard]] const std::vector<Warning>& warnings() const noexcept { return warnings_; }

private:
    KernelSpec spec_;
    std::shared_ptr<const FittedKernel> fitted_;
    std::optional<std::vector<double>> query_diagonal_;
    std::vector<Warning> warnings_;
};

/// Validates the spec (InvalidSpec on failure) and returns an unfitted kernel.
[[nodiscard]] GraphKernel make_kernel(const KernelSpec& spec);

}  // namespace gkl
