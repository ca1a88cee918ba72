#include "gkl/pipeline.hpp"

#include "gkl/error.hpp"
#include "gkl/kernel.hpp"
#include "gkl/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace gkl {

namespace {

constexpr std::uint64_t kSplitStream = 0x73706c6974;  // "split"

class Stopwatch {
public:
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

template <typename T>
std::vector<T> pick(const std::vector<T>& items, std::span<const std::size_t> idx) {
    std::vector<T> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(items[i]);
    return out;
}

}  // namespace

Split train_test_split(std::size_t n, double test_fraction, std::uint64_t seed) {
    if (n < 2) raise(ErrorKind::InvalidSpec, "cannot split fewer than 2 items");
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        raise(ErrorKind::InvalidSpec, "test fraction must lie in (0, 1)");
    }
    const auto wanted = static_cast<std::size_t>(std::llround(static_cast<double>(n) * test_fraction));
    const std::size_t test_size = std::clamp<std::size_t>(wanted, 1, n - 1);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    auto rng = derive_rng(seed, kSplitStream);
    shuffle(std::span(perm), rng);

    Split s;
    s.test.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(test_size));
    s.train.assign(perm.begin() + static_cast<std::ptrdiff_t>(test_size), perm.end());
    std::sort(s.test.begin(), s.test.end());
    std::sort(s.train.begin(), s.train.end());
    return s;
}

double accuracy(std::span<const std::int64_t> truth, std::span<const std::int64_t> predicted) {
    if (truth.size() != predicted.size()) {
        raise(ErrorKind::InvalidShape, "accuracy: " + std::to_string(truth.size()) + " labels vs " +
                                           std::to_string(predicted.size()) + " predictions");
    }
    if (truth.empty()) raise(ErrorKind::InvalidShape, "accuracy of an empty set");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) hits += truth[i] == predicted[i];
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::string format_accuracy(double fraction) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "accuracy: %.2f %%", 100.0 * fraction);
    return buf;
}

ClassificationResult classify(const DatasetBundle& data, const KernelSpec& spec, double test_fraction,
                              std::uint64_t seed, double C) {
    if (data.graphs.size() != data.targets.size()) {
        raise(ErrorKind::InvalidShape, "dataset has " + std::to_string(data.graphs.size()) + " graphs and " +
                                           std::to_string(data.targets.size()) + " targets");
    }
    ClassificationResult r;
    Stopwatch clock;
    r.split = train_test_split(data.graphs.size(), test_fraction, seed);
    const auto train_graphs = pick(data.graphs, r.split.train);
    const auto test_graphs = pick(data.graphs, r.split.test);
    const auto train_y = pick(data.targets, r.split.train);
    const auto test_y = pick(data.targets, r.split.test);
    r.timings.push_back({"split", clock.lap()});

    GraphKernel kernel(spec);
    const auto k_train = kernel.fit_transform(train_graphs);
    r.timings.push_back({"fit_transform", clock.lap()});
    r.warnings = kernel.warnings();
    const auto k_test = kernel.transform(test_graphs);
    r.timings.push_back({"transform", clock.lap()});
    for (const auto& w : kernel.warnings()) {
        if (std::find(r.warnings.begin(), r.warnings.end(), w) == r.warnings.end()) r.warnings.push_back(w);
    }
    r.train_shape = {k_train.rows(), k_train.cols()};
    r.test_shape = {k_test.rows(), k_test.cols()};

    SvmOptions options;
    options.C = C;
    const auto model = one_vs_one(k_train, train_y, options);
    r.timings.push_back({"svm_train", clock.lap()});
    r.predictions = predict(model, k_test);
    r.accuracy = accuracy(test_y, r.predictions);
    r.timings.push_back({"predict", clock.lap()});
    return r;
}

}  // namespace gkl
