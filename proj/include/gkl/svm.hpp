#pragma once

#include "gkl/kernel_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gkl {

struct SvmOptions {
    double C = 1.0;
    double tolerance = 1e-3;
    std::size_t max_iterations = 100000;
    /// Eigen-check the training matrix before solving. one_vs_one checks the
    /// full matrix once and skips it for the pairwise subproblems.
    bool check_psd = true;
};

/// Soft-margin dual solution on a precomputed kernel.
struct SvmModel {
    std::vector<double> alpha;  ///< one per training point, in [0, C]
    std::vector<int> labels;    ///< +1 / -1
    double bias = 0.0;
    double C = 1.0;
    std::size_t iterations = 0;

    [[nodiscard]] std::vector<std::size_t> support() const;
    /// Dual objective sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij.
    [[nodiscard]] double objective(const KernelMatrix& k_train) const;
};

/// SMO; the first index is the maximal KKT violator, the second is chosen by
/// second-order gain. Throws InvalidSpec for a single-class problem or
/// non-positive C, InvalidShape on size mismatch, NumericalError for a
/// non-PSD matrix or when max_iterations is exhausted.
[[nodiscard]] SvmModel svm_train(const KernelMatrix& k_train, std::span<const int> y, const SvmOptions& options = {});

/// sum_j alpha_j y_j K(q, t_j) + b per query row.
[[nodiscard]] std::vector<double> svm_decision(const SvmModel& model, const KernelMatrix& k_query_train);
/// sign of the decision value, with sign(0) = +1.
[[nodiscard]] std::vector<int> svm_predict(const SvmModel& model, const KernelMatrix& k_query_train);

/// Pairwise binary machines over the sorted distinct classes. In the machine
/// for classes a < b, a is encoded as -1.
struct OneVsOneModel {
    struct Machine {
        std::int64_t negative;
        std::int64_t positive;
        std::vector<std::size_t> members;  ///< training indices of the two classes
        SvmModel model;
    };
    std::vector<std::int64_t> classes;
    std::vector<Machine> machines;
    std::size_t train_size = 0;
};

/// Throws InvalidSpec when fewer than two classes are present.
[[nodiscard]] OneVsOneModel one_vs_one(const KernelMatrix& k_train, std::span<const std::int64_t> y,
                                       const SvmOptions& options = {});
/// Majority vote; ties go to the lowest class.
[[nodiscard]] std::vector<std::int64_t> predict(const OneVsOneModel& model, const KernelMatrix& k_query_train);

}  // namespace gkl
