#include "gkl/error.hpp"
#include "gkl/kernel.hpp"
#include "gkl/nystrom.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>

using namespace gkl;
using oracle::dense;

namespace {

KernelMatrix vertex_histogram_matrix(const std::vector<Graph>& graphs) {
    KernelSpec s;
    s.kind = KernelKind::VertexHistogram;
    return GraphKernel(s).fit_transform(graphs);
}

std::vector<Graph> random_labeled(std::uint64_t seed, std::size_t count) {
    Rng rng = derive_rng(seed, 0);
    std::vector<Graph> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(support::random_graph(rng, 2 + uniform_below(rng, 8), 0.3, 5));
    return out;
}

double relative_error(const Eigen::MatrixXd& approx, const Eigen::MatrixXd& exact) {
    return (approx - exact).norm() / exact.norm();
}

}  // namespace

TEST_CASE("full-rank Nystrom is exact") {
    const auto graphs = random_labeled(1, 10);
    const auto k = vertex_histogram_matrix(graphs);
    const auto state = nystrom_fit(k, graphs.size(), 3);
    std::vector<std::size_t> rows(graphs.size());
    std::iota(rows.begin(), rows.end(), 0);
    const auto phi = nystrom_embed(state, k.select(rows, state.landmarks, MatrixRole::Cross));
    CHECK(relative_error(phi * phi.transpose(), dense(k)) <= 1e-6);
    for (std::size_t i = 0; i < graphs.size(); ++i)
        CHECK(phi.row(static_cast<Eigen::Index>(i)).squaredNorm() == doctest::Approx(k(i, i)).epsilon(1e-6));
}

TEST_CASE("rank-1 kernel reconstructs with one landmark") {
    const std::vector<Graph> same(6, support::labeled(3, {Edge(0, 1)}, {"a", "b", "b"}));
    const auto k = vertex_histogram_matrix(same);
    const auto state = nystrom_fit(k, 1, 0);
    CHECK(state.rank() == 1);
    std::vector<std::size_t> rows(6);
    std::iota(rows.begin(), rows.end(), 0);
    const auto phi = nystrom_embed(state, k.select(rows, state.landmarks, MatrixRole::Cross));
    CHECK(relative_error(phi * phi.transpose(), dense(k)) <= 1e-12);
}

TEST_CASE("Nystrom matches the pseudo-inverse formula") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        for (auto [n, q] : {std::pair<std::size_t, std::size_t>{6, 3}, {5, 2}}) {
            const auto graphs = random_labeled(100 + seed, n);
            const auto k = vertex_histogram_matrix(graphs);
            const auto state = nystrom_fit(k, q, seed);
            CHECK(state.landmarks.size() == q);
            std::vector<std::size_t> rows(n);
            std::iota(rows.begin(), rows.end(), 0);
            const auto phi = nystrom_embed(state, k.select(rows, state.landmarks, MatrixRole::Cross));
            const Eigen::MatrixXd approx = phi * phi.transpose();
            const Eigen::MatrixXd expected = oracle::nystrom_pinv(dense(k), state.landmarks);
            CHECK((approx - expected).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, expected.cwiseAbs().maxCoeff()));
            // PSD by construction
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(approx);
            CHECK(es.eigenvalues().minCoeff() >= -1e-9 * std::max(1.0, es.eigenvalues().maxCoeff()));
        }
    }
}

TEST_CASE("embedding edge cases and errors") {
    const auto graphs = random_labeled(2, 6);
    const auto k = vertex_histogram_matrix(graphs);
    const auto state = nystrom_fit(k, 3, 1);
    const KernelMatrix zero(2, 3, MatrixRole::Cross, 0.0);
    const auto phi = nystrom_embed(state, zero);
    CHECK(phi.rows() == 2);
    CHECK(phi.cwiseAbs().maxCoeff() == 0.0);

    CHECK(support::kind_of([&] { (void)nystrom_embed(state, KernelMatrix(2, 4, MatrixRole::Cross, 0.0)); }) ==
          ErrorKind::InvalidShape);
    CHECK(support::kind_of([&] { (void)nystrom_fit(k, 7, 0); }) == ErrorKind::InvalidSpec);
    CHECK(support::kind_of([&] { (void)nystrom_fit(k, 0, 0); }) == ErrorKind::InvalidSpec);
    CHECK(support::kind_of([] { (void)nystrom_fit(KernelMatrix(3, 3, MatrixRole::FitSquare, 0.0), 2, 0); }) ==
          ErrorKind::DegenerateKernel);

    // landmarks are distinct and seed-determined
    const auto a = nystrom_fit(k, 4, 11);
    const auto b = nystrom_fit(k, 4, 11);
    CHECK(a.landmarks == b.landmarks);
    auto sorted = a.landmarks;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}

TEST_CASE("approximation error is non-increasing in q on average") {
    const auto graphs = random_labeled(3, 12);
    const auto k = vertex_histogram_matrix(graphs);
    const auto exact = dense(k);
    std::vector<std::size_t> rows(graphs.size());
    std::iota(rows.begin(), rows.end(), 0);
    std::vector<double> mean_error;
    for (std::size_t q = 1; q <= graphs.size(); ++q) {
        double total = 0.0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto state = nystrom_fit(k, q, seed);
            const auto phi = nystrom_embed(state, k.select(rows, state.landmarks, MatrixRole::Cross));
            total += relative_error(phi * phi.transpose(), exact);
        }
        mean_error.push_back(total / 10.0);
    }
    for (std::size_t i = 1; i < mean_error.size(); ++i) CHECK(mean_error[i] <= mean_error[i - 1] * 1.05 + 1e-12);
    CHECK(mean_error.back() <= 1e-6);
}

TEST_CASE("Nystrom composed through the estimator") {
    const auto graphs = random_labeled(4, 10);
    KernelSpec spec;
    spec.kind = KernelKind::VertexHistogram;
    spec.nystrom_components = 4;
    spec.seed = 5;
    GraphKernel kernel(spec);
    const auto k = kernel.fit_transform(graphs);
    CHECK(is_symmetric_psd(k));
    CHECK(max_abs_difference(k, kernel.transform(graphs)) <= 1e-9);
    const auto d = kernel.diagonal();
    for (std::size_t i = 0; i < graphs.size(); ++i) CHECK(d.fit[i] == doctest::Approx(k(i, i)));

    spec.nystrom_components = 11;
    CHECK(support::kind_of([&] { (void)GraphKernel(spec).fit_transform(graphs); }) == ErrorKind::InvalidSpec);
}
