#include "gkl/error.hpp"
#include "gkl/svm.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numeric>

using namespace gkl;

namespace {

double decision(const SvmModel& m, const KernelMatrix& k, std::size_t i) {
    double f = m.bias;
    for (std::size_t j = 0; j < m.alpha.size(); ++j) f += m.alpha[j] * m.labels[j] * k(i, j);
    return f;
}

}  // namespace

TEST_CASE("two-point analytic solution") {
    KernelMatrix k = KernelMatrix::square(2);
    k(0, 0) = k(1, 1) = 2.0;
    const std::vector<int> y{1, -1};
    const auto m = svm_train(k, y);
    CHECK(m.alpha[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(m.alpha[1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::abs(m.bias) < 1e-9);
    CHECK(svm_predict(m, k) == std::vector<int>{1, -1});
    CHECK(m.support() == std::vector<std::size_t>{0, 1});

    const KernelMatrix zero(1, 2, MatrixRole::Cross, 0.0);
    CHECK(svm_predict(m, zero) == std::vector<int>{1});
    CHECK(support::kind_of([&] { (void)svm_predict(m, KernelMatrix(1, 3, MatrixRole::Cross, 0.0)); }) ==
          ErrorKind::InvalidShape);
}

TEST_CASE("duplicated point with conflicting labels") {
    KernelMatrix k(2, 2, MatrixRole::FitSquare, 1.0);
    const std::vector<int> y{1, -1};
    const auto m = svm_train(k, y);
    CHECK(m.alpha == std::vector<double>{1.0, 1.0});
    CHECK(std::isfinite(m.objective(k)));
    CHECK(m.objective(k) == doctest::Approx(2.0));
    const auto pred = svm_predict(m, k);
    const int sign_b = m.bias >= 0.0 ? 1 : -1;
    CHECK(pred == std::vector<int>{sign_b, sign_b});
}

TEST_CASE("input validation") {
    const KernelMatrix k(3, 3, MatrixRole::FitSquare, 1.0);
    CHECK(support::kind_of([&] { (void)svm_train(k, std::vector<int>{1, 1, 1}); }) == ErrorKind::InvalidSpec);
    CHECK(support::kind_of([&] { (void)svm_train(k, std::vector<int>{1, -1}); }) == ErrorKind::InvalidShape);
    CHECK(support::kind_of([&] { (void)svm_train(k, std::vector<int>{1, -1, 2}); }) == ErrorKind::InvalidSpec);
    SvmOptions bad_c;
    bad_c.C = 0.0;
    CHECK(support::kind_of([&] { (void)svm_train(k, std::vector<int>{1, -1, 1}, bad_c); }) == ErrorKind::InvalidSpec);

    KernelMatrix indefinite = KernelMatrix::square(2);
    indefinite(0, 1) = indefinite(1, 0) = 1.0;
    CHECK(support::kind_of([&] { (void)svm_train(indefinite, std::vector<int>{1, -1}); }) == ErrorKind::NumericalError);
    KernelMatrix asymmetric = KernelMatrix::square(2);
    asymmetric(0, 0) = asymmetric(1, 1) = 2.0;
    asymmetric(0, 1) = 0.5;
    CHECK(support::kind_of([&] { (void)svm_train(asymmetric, std::vector<int>{1, -1}); }) == ErrorKind::NumericalError);
}

TEST_CASE("SMO agrees with a projected-gradient oracle and satisfies KKT") {
    Rng rng = derive_rng(12, 0);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 50; ++t) {
        const Eigen::Index n = 20;
        Eigen::MatrixXd x(n, 4);
        for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = normal(rng);
        const Eigen::MatrixXd kd = x * x.transpose();
        std::vector<int> y(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = (x(static_cast<Eigen::Index>(i), 0) + 0.7 * normal(rng)) > 0 ? 1 : -1;
        y[0] = 1;
        y[1] = -1;
        const double C = t % 2 == 0 ? 1.0 : 0.1;
        const auto k = oracle::from_dense(kd);
        SvmOptions opts;
        opts.C = C;
        const auto m = svm_train(k, y, opts);

        Eigen::VectorXd yv(n);
        for (Eigen::Index i = 0; i < n; ++i) yv(i) = y[static_cast<std::size_t>(i)];
        const double best = oracle::svm_dual_objective(kd, yv, C);
        const double obj = m.objective(k);
        CHECK(std::abs(obj - best) <= 1e-4 * std::max(1.0, std::abs(best)));

        double balance = 0.0;
        const double tau = 1e-3;
        for (std::size_t i = 0; i < y.size(); ++i) {
            CHECK(m.alpha[i] >= 0.0);
            CHECK(m.alpha[i] <= C);
            balance += m.alpha[i] * y[i];
            const double margin = y[i] * decision(m, k, i);
            if (m.alpha[i] == 0.0) {
                CHECK(margin >= 1.0 - tau);
            } else if (m.alpha[i] == C) {
                CHECK(margin <= 1.0 + tau);
            } else {
                CHECK(std::abs(margin - 1.0) <= tau);
            }
        }
        CHECK(std::abs(balance) <= 1e-8);
    }
}

TEST_CASE("positive rescaling of the kernel keeps predictions") {
    Rng rng = derive_rng(13, 0);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 10; ++t) {
        // two well separated clusters, so every multiplier stays below C
        Eigen::MatrixXd x(16, 3);
        std::vector<int> y(16);
        for (Eigen::Index i = 0; i < 16; ++i) {
            y[static_cast<std::size_t>(i)] = i < 8 ? 1 : -1;
            for (Eigen::Index d = 0; d < 3; ++d) x(i, d) = 0.3 * normal(rng) + (d == 0 ? 3.0 * y[static_cast<std::size_t>(i)] : 0.0);
        }
        Eigen::MatrixXd q(5, 3);
        for (Eigen::Index i = 0; i < q.size(); ++i) q.data()[i] = 2.0 * normal(rng);
        const Eigen::MatrixXd kd = x * x.transpose();
        const Eigen::MatrixXd kq = q * x.transpose();
        SvmOptions opts;
        opts.C = 1e3;
        const auto base = svm_train(oracle::from_dense(kd), y, opts);
        const auto reference = svm_predict(base, oracle::from_dense(kq, MatrixRole::Cross));
        CHECK(svm_predict(base, oracle::from_dense(kd)) == y);
        for (double c : {0.25, 3.0, 40.0}) {
            const auto m = svm_train(oracle::from_dense(c * kd), y, opts);
            CHECK(svm_predict(m, oracle::from_dense(c * kq, MatrixRole::Cross)) == reference);
            for (std::size_t i = 0; i < y.size(); ++i) CHECK(m.alpha[i] == doctest::Approx(base.alpha[i] / c).epsilon(1e-3).scale(1.0 / c));
        }
    }
}

TEST_CASE("one-vs-one") {
    // two classes: same predictions as a single machine
    Rng rng = derive_rng(14, 0);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd x(12, 2);
    std::vector<int> y(12);
    std::vector<std::int64_t> labels(12);
    for (Eigen::Index i = 0; i < 12; ++i) {
        const bool pos = i % 2 == 0;
        y[static_cast<std::size_t>(i)] = pos ? 1 : -1;
        labels[static_cast<std::size_t>(i)] = pos ? 7 : 3;
        x(i, 0) = normal(rng) + (pos ? 1.0 : -1.0);
        x(i, 1) = normal(rng);
    }
    const auto k = oracle::from_dense(x * x.transpose());
    const auto single = svm_train(k, y);
    const auto ovo = one_vs_one(k, labels);
    CHECK(ovo.classes == std::vector<std::int64_t>{3, 7});
    REQUIRE(ovo.machines.size() == 1);
    CHECK(ovo.machines[0].negative == 3);
    const auto p1 = svm_predict(single, k);
    const auto p2 = predict(ovo, k);
    for (std::size_t i = 0; i < 12; ++i) CHECK(p2[i] == (p1[i] > 0 ? 7 : 3));

    // three classes with a block-diagonal kernel: every pair separable
    const std::vector<std::int64_t> three{0, 0, 0, 1, 1, 1, 2, 2, 2};
    KernelMatrix block = KernelMatrix::square(9);
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j) block(i, j) = three[i] == three[j] ? (i == j ? 2.0 : 1.0) : 0.0;
    const auto m3 = one_vs_one(block, three);
    CHECK(m3.machines.size() == 3);
    CHECK(predict(m3, block) == three);

    // cyclic votes tie; the lowest class wins
    OneVsOneModel tie;
    tie.classes = {4, 5, 6};
    tie.train_size = 1;
    auto machine = [](std::int64_t neg, std::int64_t pos, double bias) {
        OneVsOneModel::Machine mc{neg, pos, {0}, {}};
        mc.model.alpha = {0.0};
        mc.model.labels = {1};
        mc.model.bias = bias;
        return mc;
    };
    tie.machines = {machine(4, 5, -1.0), machine(4, 6, 1.0), machine(5, 6, -1.0)};
    CHECK(predict(tie, KernelMatrix(1, 1, MatrixRole::Cross, 0.0)) == std::vector<std::int64_t>{4});

    CHECK(support::kind_of([&] { (void)one_vs_one(block, std::vector<std::int64_t>(9, 1)); }) == ErrorKind::InvalidSpec);
}
