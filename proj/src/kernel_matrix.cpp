#include "gkl/kernel_matrix.hpp"

#include "gkl/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gkl {

KernelMatrix::KernelMatrix(std::size_t rows, std::size_t cols, MatrixRole role, double fill)
    : rows_(rows), cols_(cols), role_(role), values_(rows * cols, fill) {}

KernelMatrix::KernelMatrix(std::size_t rows, std::size_t cols, MatrixRole role, std::vector<double> values)
    : rows_(rows), cols_(cols), role_(role), values_(std::move(values)) {
    if (values_.size() != rows_ * cols_) {
        raise(ErrorKind::InvalidShape, "matrix of shape " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                                           " given " + std::to_string(values_.size()) + " values");
    }
}

KernelMatrix KernelMatrix::select(std::span<const std::size_t> rows, std::span<const std::size_t> cols,
                                  MatrixRole role) const {
    KernelMatrix out(rows.size(), cols.size(), role);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(rows[i], cols[j]);
    }
    return out;
}

KernelMatrix KernelMatrix::scaled(double factor) const {
    KernelMatrix out = *this;
    for (auto& v : out.values_) v *= factor;
    return out;
}

KernelMatrix normalize_matrix(const KernelMatrix& k, std::span<const double> query_diagonal,
                              std::span<const double> fit_diagonal) {
    if (query_diagonal.size() != k.rows() || fit_diagonal.size() != k.cols()) {
        raise(ErrorKind::InvalidShape, "self-kernel vectors of length " + std::to_string(query_diagonal.size()) + "/" +
                                           std::to_string(fit_diagonal.size()) + " do not match a " +
                                           std::to_string(k.rows()) + "x" + std::to_string(k.cols()) + " matrix");
    }
    auto check = [](double d, std::size_t i) {
        if (d < 0.0 || std::isnan(d)) {
            raise(ErrorKind::NumericalError,
                  "negative self-kernel " + std::to_string(d) + " at index " + std::to_string(i));
        }
    };
    for (std::size_t i = 0; i < query_diagonal.size(); ++i) check(query_diagonal[i], i);
    for (std::size_t j = 0; j < fit_diagonal.size(); ++j) check(fit_diagonal[j], j);

    KernelMatrix out(k.rows(), k.cols(), k.role());
    for (std::size_t i = 0; i < k.rows(); ++i) {
        for (std::size_t j = 0; j < k.cols(); ++j) {
            const double denom = query_diagonal[i] * fit_diagonal[j];
            out(i, j) = denom > 0.0 ? k(i, j) / std::sqrt(denom) : 0.0;
        }
    }
    return out;
}

double max_abs_difference(const KernelMatrix& a, const KernelMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        raise(ErrorKind::InvalidShape, "cannot compare matrices of different shapes");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) {
        worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
    }
    return worst;
}

double max_asymmetry(const KernelMatrix& k) {
    if (k.rows() != k.cols()) raise(ErrorKind::InvalidShape, "symmetry is defined for square matrices only");
    double worst = 0.0;
    for (std::size_t i = 0; i < k.rows(); ++i) {
        for (std::size_t j = i + 1; j < k.cols(); ++j) worst = std::max(worst, std::abs(k(i, j) - k(j, i)));
    }
    return worst;
}

EigenRange eigen_range(const KernelMatrix& k) {
    if (k.rows() != k.cols()) raise(ErrorKind::InvalidShape, "eigenvalues need a square matrix");
    if (k.rows() == 0) return {};
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMajor> m(k.values().data(), static_cast<Eigen::Index>(k.rows()),
                                       static_cast<Eigen::Index>(k.cols()));
    const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) raise(ErrorKind::NumericalError, "eigenvalue computation did not converge");
    return {solver.eigenvalues().minCoeff(), solver.eigenvalues().maxCoeff()};
}

bool is_symmetric_psd(const KernelMatrix& k, double symmetry_tol, double psd_tol) {
    if (k.rows() != k.cols() || max_asymmetry(k) >= symmetry_tol) return false;
    const auto range = eigen_range(k);
    return range.min >= -psd_tol * std::max(1.0, range.max);
}

void write_csv(const KernelMatrix& k, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) raise(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
    char buf[32];
    for (std::size_t i = 0; i < k.rows(); ++i) {
        for (std::size_t j = 0; j < k.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", k(i, j));
            if (j > 0) out << ',';
            out << buf;
        }
        out << '\n';
    }
    if (!out) raise(ErrorKind::IoError, "failed writing " + path.string());
}

KernelMatrix read_csv(const std::filesystem::path& path, MatrixRole role) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::IoError, "cannot open " + path.string());
    std::vector<double> values;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::size_t count = 0;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            errno = 0;
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || errno == ERANGE) {
                raise(ErrorKind::ParseError, path.string() + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
            }
            values.push_back(v);
            ++count;
        }
        if (rows == 0) cols = count;
        if (count != cols) {
            raise(ErrorKind::ParseError, path.string() + ":" + std::to_string(line_no) + ": ragged row");
        }
        ++rows;
    }
    return {rows, cols, role, std::move(values)};
}

}  // namespace gkl
