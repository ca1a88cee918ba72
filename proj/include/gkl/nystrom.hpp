#pragma once

#include "gkl/kernel.hpp"
#include "gkl/kernel_matrix.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace gkl {

/// Relative eigenvalue cutoff: directions with eigenvalue <= cutoff * lambda_max
/// are dropped from the landmark block.
inline constexpr double kNystromCutoff = 1e-10;

/// Landmarks and the embedding map Sigma^{-1/2} U^T of the landmark block
/// W = U Sigma U^T restricted to the kept eigenpairs.
struct NystromState {
    std::vector<std::size_t> landmarks;
    Eigen::VectorXd eigenvalues;  ///< kept eigenvalues, descending
    Eigen::MatrixXd coefficients; ///< r x q

    [[nodiscard]] std::size_t rank() const noexcept { return static_cast<std::size_t>(coefficients.rows()); }
};

/// Draws q landmarks uniformly without replacement (seeded) and decomposes
/// their kernel block. Throws InvalidSpec for q = 0 or q > n and
/// DegenerateKernel when no eigenvalue survives the cutoff.
[[nodiscard]] NystromState nystrom_fit(const KernelMatrix& k_fit, std::size_t q, std::uint64_t seed);
/// Same with caller-chosen landmarks.
[[nodiscard]] NystromState nystrom_fit_landmarks(const KernelMatrix& k_fit, std::vector<std::size_t> landmarks);

/// Rows of `k_to_landmarks` (m x q) mapped to the r-dimensional embedding.
/// Throws InvalidShape when the column count is not q.
[[nodiscard]] Eigen::MatrixXd nystrom_embed(const NystromState& state, const KernelMatrix& k_to_landmarks);

/// Composes Nystrom on top of a fitted kernel (typically already normalised).
class NystromFittedKernel final : public FittedKernel {
public:
    NystromFittedKernel(std::shared_ptr<const FittedKernel> inner, std::size_t components, std::uint64_t seed);

    [[nodiscard]] std::size_t size() const override { return inner_->size(); }
    [[nodiscard]] const std::vector<double>& fit_diagonal() const override { return diagonal_; }
    [[nodiscard]] KernelMatrix fit_matrix() const override;
    [[nodiscard]] Evaluation evaluate(std::span<const Graph> queries) const override;
    [[nodiscard]] std::vector<Warning> fit_warnings() const override { return inner_->fit_warnings(); }

    [[nodiscard]] const NystromState& state() const noexcept { return state_; }
    [[nodiscard]] const Eigen::MatrixXd& embedding() const noexcept { return embedding_; }

private:
    std::shared_ptr<const FittedKernel> inner_;
    NystromState state_;
    Eigen::MatrixXd embedding_;  ///< n x r
    std::vector<double> diagonal_;
};

}  // namespace gkl
