#pragma once

#include "gkl/datasets.hpp"
#include "gkl/kernel_spec.hpp"
#include "gkl/svm.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gkl {

struct Split {
    std::vector<std::size_t> train;  ///< ascending
    std::vector<std::size_t> test;   ///< ascending
};

/// Seeded shuffle; the first round(n * test_fraction) indices, clamped to
/// [1, n-1], form the test set. Throws InvalidSpec for n < 2 or a fraction
/// outside (0, 1).
[[nodiscard]] Split train_test_split(std::size_t n, double test_fraction, std::uint64_t seed);

/// Fraction of equal entries; InvalidShape on length mismatch.
[[nodiscard]] double accuracy(std::span<const std::int64_t> truth, std::span<const std::int64_t> predicted);

/// "accuracy: XX.XX %"
[[nodiscard]] std::string format_accuracy(double fraction);

struct PhaseTiming {
    std::string phase;
    double seconds = 0.0;
};

struct ClassificationResult {
    Split split;
    std::vector<std::int64_t> predictions;  ///< aligned with split.test
    double accuracy = 0.0;
    std::pair<std::size_t, std::size_t> train_shape;
    std::pair<std::size_t, std::size_t> test_shape;
    std::vector<PhaseTiming> timings;
    std::vector<Warning> warnings;
};

/// Split, fit_transform on the training graphs, transform the test graphs,
/// train one-vs-one SVMs, predict. The split uses `seed`; the kernel uses
/// `spec.seed`.
[[nodiscard]] ClassificationResult classify(const DatasetBundle& data, const KernelSpec& spec, double test_fraction,
                                            std::uint64_t seed, double C = 1.0);

}  // namespace gkl
