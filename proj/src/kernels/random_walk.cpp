#include "gkl/kernels/random_walk.hpp"

#include "gkl/error.hpp"
#include "gkl/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gkl {

double spectral_radius_estimate(const Graph& g, std::size_t iterations) {
    const std::size_t n = g.order();
    if (n == 0 || g.size() == 0) return 0.0;
    std::vector<double> x(n, 1.0);
    std::vector<double> y(n);
    double ratio = 0.0;
    for (std::size_t it = 0; it < iterations; ++it) {
        double before = 0.0;
        double after = 0.0;
        for (Vertex v = 0; v < n; ++v) {
            double s = 0.0;
            for (Vertex w : g.neighbors(v)) s += x[w];
            y[v] = s;
            before += x[v] * x[v];
            after += s * s;
        }
        if (after == 0.0) return 0.0;
        ratio = std::sqrt(after / before);
        const double norm = std::sqrt(after);
        for (Vertex v = 0; v < n; ++v) x[v] = y[v] / norm;
    }
    return ratio;
}

double random_walk_kernel_pair(const Graph& g, const Graph& h, const RandomWalkParams& params) {
    return random_walk_kernel_pair(g, h, params, spectral_radius_estimate(g), spectral_radius_estimate(h));
}

namespace {

// Total order on graphs used to fix the operand order of the product, so the
// LU round-off, and hence the value, does not depend on argument order.
bool precedes(const Graph& a, const Graph& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    if (a.size() != b.size()) return a.size() < b.size();
    if (a.edges() != b.edges()) return a.edges() < b.edges();
    if (a.vertex_labels() != b.vertex_labels()) return a.vertex_labels() < b.vertex_labels();
    return a.edge_labels() < b.edge_labels();
}

}  // namespace

double random_walk_kernel_pair(const Graph& g, const Graph& h, const RandomWalkParams& params, double rho_g,
                               double rho_h) {
    if (precedes(h, g)) return random_walk_kernel_pair(h, g, params, rho_h, rho_g);
    if (params.lambda < 0.0) raise(ErrorKind::InvalidSpec, "lambda must be non-negative");
    const double rho = rho_g * rho_h;
    if (params.lambda * rho >= params.spectral_margin) {
        std::ostringstream os;
        os << "lambda=" << params.lambda << " with estimated product spectral radius " << rho
           << " violates lambda*rho < " << params.spectral_margin << "; lower lambda below "
           << params.spectral_margin / rho;
        raise(ErrorKind::Divergent, os.str());
    }
    const Graph product = direct_product(g, h, params.match_labels);
    const std::size_t n = product.order();
    if (n == 0) return 0.0;

    // I - lambda*A is block diagonal over connected components; each block is
    // solved densely on its own and an isolated vertex contributes exactly 1.
    std::vector<std::size_t> component(n, n);
    std::vector<Vertex> members;
    std::vector<Eigen::Index> local(n);
    double value = 0.0;
    for (Vertex root = 0; root < n; ++root) {
        if (component[root] != n) continue;
        members.assign(1, root);
        component[root] = root;
        for (std::size_t head = 0; head < members.size(); ++head) {
            for (Vertex w : product.neighbors(members[head])) {
                if (component[w] == n) {
                    component[w] = root;
                    members.push_back(w);
                }
            }
        }
        if (members.size() == 1) {
            value += 1.0;
            continue;
        }
        std::sort(members.begin(), members.end());
        const auto size = static_cast<Eigen::Index>(members.size());
        for (Eigen::Index i = 0; i < size; ++i) local[members[static_cast<std::size_t>(i)]] = i;
        Eigen::MatrixXd system = Eigen::MatrixXd::Identity(size, size);
        for (Vertex v : members) {
            for (Vertex w : product.neighbors(v)) system(local[v], local[w]) -= params.lambda;
        }
        const Eigen::VectorXd x = system.partialPivLu().solve(Eigen::VectorXd::Ones(size));
        value += x.sum();
    }
    if (!std::isfinite(value)) raise(ErrorKind::NumericalError, "random-walk solve produced a non-finite value");
    return value;
}

RandomWalkFittedKernel::RandomWalkFittedKernel(RandomWalkParams params, std::span<const Graph> graphs)
    : params_(params), graphs_(graphs.begin(), graphs.end()) {
    if (graphs_.empty()) raise(ErrorKind::EmptyCollection, "cannot fit on an empty collection");
    require(graphs_);
    radii_.resize(graphs_.size());
    for (std::size_t i = 0; i < graphs_.size(); ++i) radii_[i] = spectral_radius_estimate(graphs_[i]);
    diagonal_.resize(graphs_.size());
    parallel_for(graphs_.size(), [&](std::size_t i) {
        diagonal_[i] = random_walk_kernel_pair(graphs_[i], graphs_[i], params_, radii_[i], radii_[i]);
    });
}

void RandomWalkFittedKernel::require(std::span<const Graph> graphs) const {
    if (!params_.match_labels) return;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        if (!graphs[i].has_vertex_labels()) {
            raise(ErrorKind::IncompatibleInput,
                  "graph " + std::to_string(i) + ": random_walk with match_labels=true requires vertex labels");
        }
    }
}

KernelMatrix RandomWalkFittedKernel::fit_matrix() const {
    const std::size_t n = graphs_.size();
    KernelMatrix k = KernelMatrix::square(n);
    // Row i covers the upper triangle j >= i; the diagonal is already known.
    parallel_for(n, [&](std::size_t i) {
        k(i, i) = diagonal_[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            k(i, j) = random_walk_kernel_pair(graphs_[i], graphs_[j], params_, radii_[i], radii_[j]);
        }
    });
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) k(i, j) = k(j, i);
    }
    return k;
}

Evaluation RandomWalkFittedKernel::evaluate(std::span<const Graph> queries) const {
    require(queries);
    const std::size_t m = queries.size();
    const std::size_t n = graphs_.size();
    std::vector<double> rq(m);
    for (std::size_t i = 0; i < m; ++i) rq[i] = spectral_radius_estimate(queries[i]);
    Evaluation out;
    out.matrix = KernelMatrix::cross(m, n);
    out.query_diagonal.resize(m);
    parallel_for(m, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.matrix(i, j) = random_walk_kernel_pair(graphs_[j], queries[i], params_, radii_[j], rq[i]);
        }
        out.query_diagonal[i] = random_walk_kernel_pair(queries[i], queries[i], params_, rq[i], rq[i]);
    });
    return out;
}

}  // namespace gkl
