#include "gkl/kernels/graphlet.hpp"

#include "gkl/error.hpp"
#include "gkl/parallel.hpp"

#include <array>
#include <cmath>

namespace gkl {

GraphletTable::GraphletTable(std::size_t k) : k_(k) {
    if (k < 3 || k > 5) raise(ErrorKind::InvalidSpec, "graphlet size k must be 3, 4 or 5, got " + std::to_string(k));
    const std::size_t pairs = k * (k - 1) / 2;
    const std::uint64_t masks = std::uint64_t{1} << pairs;
    mask_class_.resize(masks);
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
        const auto code = canonical_code_from_mask(k, mask);
        auto [it, inserted] = code_class_.try_emplace(code, classes_.size());
        if (inserted) classes_.push_back(code);
        mask_class_[mask] = static_cast<std::uint16_t>(it->second);
    }
}

std::size_t GraphletTable::class_of(const CanonicalCode& code) const {
    auto it = code_class_.find(code);
    if (it == code_class_.end()) raise(ErrorKind::InvalidSpec, "code does not belong to this graphlet table");
    return it->second;
}

GraphletTable build_graphlet_table(std::size_t k) { return GraphletTable(k); }

double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return std::round(r);
}

GraphletMode choose_graphlet_mode(std::size_t n, const GraphletParams& params) {
    if (params.exhaustive) return *params.exhaustive ? GraphletMode::Exhaustive : GraphletMode::Sampled;
    return binomial(n, params.k) <= 2.0 * static_cast<double>(params.n_samples) ? GraphletMode::Exhaustive
                                                                                : GraphletMode::Sampled;
}

namespace {

class DenseAdjacency {
public:
    explicit DenseAdjacency(const Graph& g) : n_(g.order()), bits_(n_ * n_, 0) {
        for (const auto& e : g.edges()) bits_[e.first * n_ + e.second] = bits_[e.second * n_ + e.first] = 1;
    }
    [[nodiscard]] bool operator()(Vertex u, Vertex v) const { return bits_[u * n_ + v] != 0; }

private:
    std::size_t n_;
    std::vector<std::uint8_t> bits_;
};

std::uint64_t subset_mask(const DenseAdjacency& adj, const std::array<Vertex, 5>& s, std::size_t k) {
    const std::size_t pairs = k * (k - 1) / 2;
    std::uint64_t mask = 0;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j, ++pos) {
            if (adj(s[i], s[j])) mask |= std::uint64_t{1} << (pairs - 1 - pos);
        }
    }
    return mask;
}

}  // namespace

GraphletCounts graphlet_counts(const Graph& g, const GraphletTable& table, std::size_t n_samples, GraphletMode mode,
                               Rng& rng) {
    const std::size_t n = g.order();
    const std::size_t k = table.k();
    GraphletCounts out;
    out.mode = mode;
    if (mode == GraphletMode::Sampled && n_samples == 0) {
        raise(ErrorKind::InvalidSpec, "n_samples must be positive in sampled mode");
    }
    if (n < k) return out;

    const DenseAdjacency adj(g);
    std::vector<double> counts(table.class_count(), 0.0);
    std::array<Vertex, 5> subset{};

    if (mode == GraphletMode::Exhaustive) {
        for (std::size_t i = 0; i < k; ++i) subset[i] = i;
        while (true) {
            counts[table.class_of_mask(subset_mask(adj, subset, k))] += 1.0;
            // Advance to the next k-combination in lexicographic order.
            std::size_t i = k;
            while (i > 0 && subset[i - 1] == n - k + (i - 1)) --i;
            if (i == 0) break;
            ++subset[i - 1];
            for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
        }
    } else {
        for (std::size_t draw = 0; draw < n_samples; ++draw) {
            for (std::size_t i = 0; i < k; ++i) {
                bool fresh = false;
                while (!fresh) {
                    subset[i] = static_cast<Vertex>(uniform_below(rng, n));
                    fresh = true;
                    for (std::size_t j = 0; j < i; ++j) fresh = fresh && subset[j] != subset[i];
                }
            }
            counts[table.class_of_mask(subset_mask(adj, subset, k))] += 1.0;
        }
        out.scale = binomial(n, k) / static_cast<double>(n_samples);
    }

    std::vector<FeatureMap::Entry> entries;
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] > 0.0) entries.emplace_back(c, counts[c]);
    }
    out.counts = FeatureMap::from_entries(std::move(entries));
    return out;
}

std::uint64_t structure_hash(const Graph& g) {
    std::uint64_t h = splitmix64(g.order());
    for (const auto& e : g.edges()) {
        h = splitmix64(h ^ e.first);
        h = splitmix64(h ^ e.second);
    }
    return h;
}

GraphletExtractor::GraphletExtractor(GraphletParams params, std::uint64_t seed)
    : params_(params), seed_(seed), table_(params.k) {}

std::vector<FeatureMap> GraphletExtractor::fit_features(std::span<const Graph> graphs) {
    return frozen_features(graphs);
}

std::vector<FeatureMap> GraphletExtractor::frozen_features(std::span<const Graph> graphs) const {
    std::vector<FeatureMap> out(graphs.size());
    parallel_for(graphs.size(), [&](std::size_t i) {
        auto rng = derive_rng(seed_, structure_hash(graphs[i]));
        const auto mode = choose_graphlet_mode(graphs[i].order(), params_);
        out[i] = graphlet_counts(graphs[i], table_, params_.n_samples, mode, rng).features();
    });
    return out;
}

}  // namespace gkl
