#pragma once

#include "gkl/kernel.hpp"
#include "gkl/kernel_spec.hpp"

namespace gkl {

/// Power-iteration estimate of the adjacency spectral radius
/// (norm ratio after `iterations` steps from the all-ones vector).
[[nodiscard]] double spectral_radius_estimate(const Graph& g, std::size_t iterations = 20);

/// Geometric random-walk kernel 1^T (I - lambda A_x)^{-1} 1 on the direct
/// product graph, solved densely by LU.
///
/// Before solving, checks lambda * rho(g) * rho(h) < spectral_margin using the
/// factor estimates (the product's spectral radius is their product) and
/// throws Divergent otherwise. lambda = 0 is accepted and yields the product
/// vertex count; an empty product yields 0.
[[nodiscard]] double random_walk_kernel_pair(const Graph& g, const Graph& h, const RandomWalkParams& params);

/// Same, with the factor spectral radii supplied by the caller.
[[nodiscard]] double random_walk_kernel_pair(const Graph& g, const Graph& h, const RandomWalkParams& params,
                                             double rho_g, double rho_h);

/// Pairwise kernel: the fit collection is retained and every entry solved.
class RandomWalkFittedKernel final : public FittedKernel {
public:
    RandomWalkFittedKernel(RandomWalkParams params, std::span<const Graph> graphs);

    [[nodiscard]] std::size_t size() const override { return graphs_.size(); }
    [[nodiscard]] const std::vector<double>& fit_diagonal() const override { return diagonal_; }
    [[nodiscard]] KernelMatrix fit_matrix() const override;
    [[nodiscard]] Evaluation evaluate(std::span<const Graph> queries) const override;

private:
    void require(std::span<const Graph> graphs) const;

    RandomWalkParams params_;
    std::vector<Graph> graphs_;
    std::vector<double> radii_;
    std::vector<double> diagonal_;
};

}  // namespace gkl
