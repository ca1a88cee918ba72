#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace gkl {

enum class MatrixRole { FitSquare, Cross };

/// Dense row-major matrix of kernel values. A FitSquare matrix is n x n over
/// the fit collection; a Cross matrix is m x n (queries x fit graphs).
class KernelMatrix {
public:
    KernelMatrix() = default;
    KernelMatrix(std::size_t rows, std::size_t cols, MatrixRole role, double fill = 0.0);
    KernelMatrix(std::size_t rows, std::size_t cols, MatrixRole role, std::vector<double> values);

    static KernelMatrix square(std::size_t n) { return {n, n, MatrixRole::FitSquare}; }
    static KernelMatrix cross(std::size_t m, std::size_t n) { return {m, n, MatrixRole::Cross}; }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] MatrixRole role() const noexcept { return role_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

    double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const { return {values_.data() + i * cols_, cols_}; }

    /// Rows and columns restricted to the given indices.
    [[nodiscard]] KernelMatrix select(std::span<const std::size_t> rows, std::span<const std::size_t> cols,
                                      MatrixRole role) const;
    [[nodiscard]] KernelMatrix scaled(double factor) const;

    friend bool operator==(const KernelMatrix&, const KernelMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    MatrixRole role_ = MatrixRole::Cross;
    std::vector<double> values_;
};

/// Cosine normalisation K(i,j) / sqrt(dq(i) * df(j)). Entries whose
/// denominator involves a zero self-kernel become 0; a negative self-kernel
/// raises NumericalError.
[[nodiscard]] KernelMatrix normalize_matrix(const KernelMatrix& k, std::span<const double> query_diagonal,
                                            std::span<const double> fit_diagonal);

[[nodiscard]] double max_abs_difference(const KernelMatrix& a, const KernelMatrix& b);
[[nodiscard]] double max_asymmetry(const KernelMatrix& k);

struct EigenRange {
    double min = 0.0;
    double max = 0.0;
};

/// Extreme eigenvalues of the symmetric part of a square matrix.
[[nodiscard]] EigenRange eigen_range(const KernelMatrix& k);

/// Symmetric within 1e-9 and min eigenvalue >= -1e-8 * max(1, lambda_max).
[[nodiscard]] bool is_symmetric_psd(const KernelMatrix& k, double symmetry_tol = 1e-9, double psd_tol = 1e-8);

/// One row per line, 17 significant digits, no header.
void write_csv(const KernelMatrix& k, const std::filesystem::path& path);
[[nodiscard]] KernelMatrix read_csv(const std::filesystem::path& path, MatrixRole role = MatrixRole::Cross);

}  // namespace gkl
