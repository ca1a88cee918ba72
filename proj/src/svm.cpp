#include "gkl/svm.hpp"

#include "gkl/error.hpp"
#include "gkl/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace gkl {

namespace {

constexpr double kCurvatureFloor = 1e-12;

void check_training_matrix(const KernelMatrix& k) {
    double scale = 1.0;
    for (double v : k.values()) scale = std::max(scale, std::abs(v));
    if (max_asymmetry(k) > 1e-9 * scale) raise(ErrorKind::NumericalError, "training kernel is not symmetric");
    const auto range = eigen_range(k);
    if (range.min < -1e-8 * std::max(1.0, range.max)) {
        raise(ErrorKind::NumericalError,
              "training kernel is not positive semidefinite (smallest eigenvalue " + std::to_string(range.min) + ")");
    }
}

}  // namespace

std::vector<std::size_t> SvmModel::support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] > 0.0) s.push_back(i);
    }
    return s;
}

double SvmModel::objective(const KernelMatrix& k) const {
    double linear = 0.0;
    double quadratic = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        linear += alpha[i];
        if (alpha[i] == 0.0) continue;
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            quadratic += alpha[i] * alpha[j] * labels[i] * labels[j] * k(i, j);
        }
    }
    return linear - 0.5 * quadratic;
}

SvmModel svm_train(const KernelMatrix& k, std::span<const int> y, const SvmOptions& options) {
    const std::size_t n = y.size();
    if (k.rows() != n || k.cols() != n) {
        raise(ErrorKind::InvalidShape, "training kernel is " + std::to_string(k.rows()) + "x" +
                                           std::to_string(k.cols()) + " for " + std::to_string(n) + " labels");
    }
    if (!(options.C > 0.0)) raise(ErrorKind::InvalidSpec, "C must be positive");
    bool has_pos = false;
    bool has_neg = false;
    for (int v : y) {
        if (v == 1) has_pos = true;
        else if (v == -1) has_neg = true;
        else raise(ErrorKind::InvalidSpec, "binary labels must be +1 or -1");
    }
    if (!has_pos || !has_neg) raise(ErrorKind::InvalidSpec, "training labels contain a single class");
    if (options.check_psd) check_training_matrix(k);

    const double C = options.C;
    SvmModel model;
    model.C = C;
    model.labels.assign(y.begin(), y.end());
    auto& alpha = model.alpha;
    alpha.assign(n, 0.0);
    // Gradient of 1/2 a'Qa - e'a with Q_ij = y_i y_j K_ij.
    std::vector<double> grad(n, -1.0);

    auto in_up = [&](std::size_t t) { return y[t] == 1 ? alpha[t] < C : alpha[t] > 0.0; };
    auto in_low = [&](std::size_t t) { return y[t] == 1 ? alpha[t] > 0.0 : alpha[t] < C; };

    std::size_t iter = 0;
    for (;; ++iter) {
        // i: maximal violator in I_up. j: among I_low entries violating with i,
        // the one with the largest second-order decrease (libsvm's WSS 2).
        // Convergence is judged on the maximal violating pair (m - M).
        double m = -std::numeric_limits<double>::infinity();
        double M = std::numeric_limits<double>::infinity();
        std::size_t i = n;
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -y[t] * grad[t];
            if (in_up(t) && v > m) {
                m = v;
                i = t;
            }
            if (in_low(t)) M = std::min(M, v);
        }
        if (i == n || !std::isfinite(M) || m - M < options.tolerance) break;
        if (iter >= options.max_iterations) {
            raise(ErrorKind::NumericalError, "SMO did not converge within " + std::to_string(options.max_iterations) +
                                                 " iterations (violation " + std::to_string(m - M) + ")");
        }
        std::size_t j = n;
        double best_gain = -std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            if (!in_low(t)) continue;
            const double b = m + y[t] * grad[t];
            if (b <= 0.0) continue;
            const double a = std::max(k(i, i) + k(t, t) - 2.0 * k(i, t), kCurvatureFloor);
            const double gain = b * b / a;
            if (gain > best_gain) {
                best_gain = gain;
                j = t;
            }
        }

        const double quad = std::max(k(i, i) + k(j, j) - 2.0 * k(i, j), kCurvatureFloor);
        const double old_i = alpha[i];
        const double old_j = alpha[j];
        // Same two-variable update as libsvm's Solver::Solve.
        if (y[i] != y[j]) {
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0.0) {
                if (alpha[j] < 0.0) {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if (diff > 0.0) {
                if (alpha[i] > C) {
                    alpha[i] = C;
                    alpha[j] = C - diff;
                }
            } else if (alpha[j] > C) {
                alpha[j] = C;
                alpha[i] = C + diff;
            }
        } else {
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > C) {
                if (alpha[i] > C) {
                    alpha[i] = C;
                    alpha[j] = sum - C;
                }
            } else if (alpha[j] < 0.0) {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if (sum > C) {
                if (alpha[j] > C) {
                    alpha[j] = C;
                    alpha[i] = sum - C;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }

        const double di = alpha[i] - old_i;
        const double dj = alpha[j] - old_j;
        for (std::size_t t = 0; t < n; ++t) {
            grad[t] += y[t] * (y[i] * k(t, i) * di + y[j] * k(t, j) * dj);
        }
    }
    model.iterations = iter;

    // Bias: mean over free vectors, else the midpoint of the feasible interval.
    double free_sum = 0.0;
    std::size_t free_count = 0;
    double upper = std::numeric_limits<double>::infinity();
    double lower = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
        const double v = -y[t] * grad[t];
        if (alpha[t] > 0.0 && alpha[t] < C) {
            free_sum += v;
            ++free_count;
        } else {
            if (in_up(t)) lower = std::max(lower, v);
            if (in_low(t)) upper = std::min(upper, v);
        }
    }
    if (free_count > 0) {
        model.bias = free_sum / static_cast<double>(free_count);
    } else if (std::isfinite(upper) && std::isfinite(lower)) {
        model.bias = 0.5 * (upper + lower);
    } else {
        model.bias = std::isfinite(upper) ? upper : lower;
    }
    return model;
}

std::vector<double> svm_decision(const SvmModel& model, const KernelMatrix& kq) {
    if (kq.cols() != model.alpha.size()) {
        raise(ErrorKind::InvalidShape, "query kernel has " + std::to_string(kq.cols()) + " columns, model was trained on " +
                                           std::to_string(model.alpha.size()) + " points");
    }
    std::vector<double> out(kq.rows(), model.bias);
    for (std::size_t q = 0; q < kq.rows(); ++q) {
        double s = 0.0;
        for (std::size_t j = 0; j < model.alpha.size(); ++j) {
            if (model.alpha[j] != 0.0) s += model.alpha[j] * model.labels[j] * kq(q, j);
        }
        out[q] += s;
    }
    return out;
}

std::vector<int> svm_predict(const SvmModel& model, const KernelMatrix& kq) {
    const auto d = svm_decision(model, kq);
    std::vector<int> out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i] >= 0.0 ? 1 : -1;
    return out;
}

OneVsOneModel one_vs_one(const KernelMatrix& k, std::span<const std::int64_t> y, const SvmOptions& options) {
    if (k.rows() != y.size() || k.cols() != y.size()) {
        raise(ErrorKind::InvalidShape, "training kernel is " + std::to_string(k.rows()) + "x" +
                                           std::to_string(k.cols()) + " for " + std::to_string(y.size()) + " labels");
    }
    OneVsOneModel out;
    out.train_size = y.size();
    const std::set<std::int64_t> distinct(y.begin(), y.end());
    out.classes.assign(distinct.begin(), distinct.end());
    if (out.classes.size() < 2) raise(ErrorKind::InvalidSpec, "training labels contain a single class");
    if (options.check_psd) check_training_matrix(k);

    for (std::size_t a = 0; a < out.classes.size(); ++a) {
        for (std::size_t b = a + 1; b < out.classes.size(); ++b) {
            OneVsOneModel::Machine m{out.classes[a], out.classes[b], {}, {}};
            for (std::size_t i = 0; i < y.size(); ++i) {
                if (y[i] == m.negative || y[i] == m.positive) m.members.push_back(i);
            }
            out.machines.push_back(std::move(m));
        }
    }
    auto sub = options;
    sub.check_psd = false;
    parallel_for(out.machines.size(), [&](std::size_t p) {
        auto& m = out.machines[p];
        std::vector<int> labels(m.members.size());
        for (std::size_t i = 0; i < m.members.size(); ++i) labels[i] = y[m.members[i]] == m.negative ? -1 : 1;
        const auto kk = k.select(m.members, m.members, MatrixRole::FitSquare);
        m.model = svm_train(kk, labels, sub);
    });
    return out;
}

std::vector<std::int64_t> predict(const OneVsOneModel& model, const KernelMatrix& kq) {
    if (kq.cols() != model.train_size) {
        raise(ErrorKind::InvalidShape, "query kernel has " + std::to_string(kq.cols()) + " columns, model was trained on " +
                                           std::to_string(model.train_size) + " points");
    }
    std::vector<std::size_t> rows(kq.rows());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    std::map<std::int64_t, std::size_t> index;
    for (std::size_t c = 0; c < model.classes.size(); ++c) index[model.classes[c]] = c;

    std::vector<std::vector<std::size_t>> votes(kq.rows(), std::vector<std::size_t>(model.classes.size(), 0));
    for (const auto& m : model.machines) {
        const auto sub = kq.select(rows, m.members, MatrixRole::Cross);
        const auto pred = svm_predict(m.model, sub);
        for (std::size_t q = 0; q < pred.size(); ++q) ++votes[q][index[pred[q] < 0 ? m.negative : m.positive]];
    }
    std::vector<std::int64_t> out(kq.rows());
    for (std::size_t q = 0; q < out.size(); ++q) {
        const auto best = std::max_element(votes[q].begin(), votes[q].end());  // first maximum: lowest class
        out[q] = model.classes[static_cast<std::size_t>(best - votes[q].begin())];
    }
    return out;
}

}  // namespace gkl
