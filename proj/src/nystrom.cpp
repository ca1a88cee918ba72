#include "gkl/nystrom.hpp"

#include "gkl/error.hpp"
#include "gkl/random.hpp"

#include <algorithm>
#include <numeric>

namespace gkl {

NystromState nystrom_fit(const KernelMatrix& k_fit, std::size_t q, std::uint64_t seed) {
    const std::size_t n = k_fit.rows();
    if (q == 0 || q > n) {
        raise(ErrorKind::InvalidSpec,
              "nystrom_components=" + std::to_string(q) + " must lie in [1, " + std::to_string(n) + "]");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto rng = derive_rng(seed, 0x4e7973);
    // Partial Fisher-Yates: the first q slots become a uniform q-subset.
    for (std::size_t i = 0; i < q; ++i) {
        const auto j = i + static_cast<std::size_t>(uniform_below(rng, n - i));
        std::swap(order[i], order[j]);
    }
    order.resize(q);
    std::sort(order.begin(), order.end());
    return nystrom_fit_landmarks(k_fit, std::move(order));
}

NystromState nystrom_fit_landmarks(const KernelMatrix& k_fit, std::vector<std::size_t> landmarks) {
    if (k_fit.rows() != k_fit.cols()) raise(ErrorKind::InvalidShape, "Nystrom needs a square fit matrix");
    const auto q = static_cast<Eigen::Index>(landmarks.size());
    if (q == 0) raise(ErrorKind::InvalidSpec, "Nystrom needs at least one landmark");
    Eigen::MatrixXd w(q, q);
    for (Eigen::Index a = 0; a < q; ++a) {
        for (Eigen::Index b = 0; b < q; ++b) {
            const auto i = landmarks[static_cast<std::size_t>(a)];
            const auto j = landmarks[static_cast<std::size_t>(b)];
            if (i >= k_fit.rows() || j >= k_fit.rows()) raise(ErrorKind::InvalidSpec, "landmark index out of range");
            w(a, b) = 0.5 * (k_fit(i, j) + k_fit(j, i));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(w);
    if (solver.info() != Eigen::Success) raise(ErrorKind::NumericalError, "landmark eigendecomposition failed");

    const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
    const double top = values(q - 1);
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = q - 1; i >= 0; --i) {
        if (top > 0.0 && values(i) > kNystromCutoff * top) kept.push_back(i);
    }
    if (kept.empty()) raise(ErrorKind::DegenerateKernel, "every landmark eigenvalue is below the cutoff");

    NystromState state;
    state.landmarks = std::move(landmarks);
    const auto r = static_cast<Eigen::Index>(kept.size());
    state.eigenvalues.resize(r);
    state.coefficients.resize(r, q);
    for (Eigen::Index c = 0; c < r; ++c) {
        const auto idx = kept[static_cast<std::size_t>(c)];
        state.eigenvalues(c) = values(idx);
        state.coefficients.row(c) = solver.eigenvectors().col(idx).transpose() / std::sqrt(values(idx));
    }
    return state;
}

Eigen::MatrixXd nystrom_embed(const NystromState& state, const KernelMatrix& k_to_landmarks) {
    const auto q = static_cast<Eigen::Index>(state.landmarks.size());
    if (static_cast<Eigen::Index>(k_to_landmarks.cols()) != q) {
        raise(ErrorKind::InvalidShape, "expected " + std::to_string(q) + " landmark columns, got " +
                                           std::to_string(k_to_landmarks.cols()));
    }
    const auto m = static_cast<Eigen::Index>(k_to_landmarks.rows());
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMajor> c(k_to_landmarks.values().data(), m, q);
    return c * state.coefficients.transpose();
}

namespace {

KernelMatrix landmark_columns(const KernelMatrix& k, const std::vector<std::size_t>& landmarks) {
    std::vector<std::size_t> rows(k.rows());
    std::iota(rows.begin(), rows.end(), 0);
    return k.select(rows, landmarks, MatrixRole::Cross);
}

KernelMatrix outer(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, MatrixRole role) {
    const Eigen::MatrixXd prod = a * b.transpose();
    KernelMatrix out(static_cast<std::size_t>(prod.rows()), static_cast<std::size_t>(prod.cols()), role);
    for (Eigen::Index i = 0; i < prod.rows(); ++i) {
        for (Eigen::Index j = 0; j < prod.cols(); ++j) {
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = prod(i, j);
        }
    }
    return out;
}

}  // namespace

NystromFittedKernel::NystromFittedKernel(std::shared_ptr<const FittedKernel> inner, std::size_t components,
                                         std::uint64_t seed)
    : inner_(std::move(inner)) {
    const KernelMatrix k = inner_->fit_matrix();
    state_ = nystrom_fit(k, components, seed);
    embedding_ = nystrom_embed(state_, landmark_columns(k, state_.landmarks));
    diagonal_.resize(inner_->size());
    for (Eigen::Index i = 0; i < embedding_.rows(); ++i) diagonal_[static_cast<std::size_t>(i)] = embedding_.row(i).squaredNorm();
}

KernelMatrix NystromFittedKernel::fit_matrix() const {
    KernelMatrix k = outer(embedding_, embedding_, MatrixRole::FitSquare);
    // Round-off in the product is not guaranteed symmetric.
    for (std::size_t i = 0; i < k.rows(); ++i) {
        for (std::size_t j = 0; j < i; ++j) k(i, j) = k(j, i);
    }
    return k;
}

Evaluation NystromFittedKernel::evaluate(std::span<const Graph> queries) const {
    auto inner = inner_->evaluate(queries);
    const Eigen::MatrixXd phi = nystrom_embed(state_, landmark_columns(inner.matrix, state_.landmarks));
    Evaluation out;
    out.matrix = outer(phi, embedding_, MatrixRole::Cross);
    out.query_diagonal.resize(queries.size());
    for (Eigen::Index i = 0; i < phi.rows(); ++i) out.query_diagonal[static_cast<std::size_t>(i)] = phi.row(i).squaredNorm();
    out.warnings = std::move(inner.warnings);
    return out;
}

}  // namespace gkl
