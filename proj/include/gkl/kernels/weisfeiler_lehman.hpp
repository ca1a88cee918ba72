#pragma once

#include "gkl/feature_map.hpp"
#include "gkl/kernel.hpp"
#include "gkl/kernel_spec.hpp"

#include <cstdint>
#include <vector>

namespace gkl {

/// Per-vertex label ids of one graph.
using LabelIds = std::vector<FeatureId>;

/// Neighbourhood signature: own label and the sorted multiset of neighbour labels.
struct WlSignature {
    FeatureId own = 0;
    std::vector<FeatureId> neighbors;

    friend bool operator==(const WlSignature&, const WlSignature&) = default;
};

struct WlSignatureHash {
    std::size_t operator()(const WlSignature& s) const noexcept;
};

/// Injective signature -> id table for one refinement level. Ids continue
/// from the end of the previous level's range. After `freeze()` lookups never
/// grow the table; unseen signatures get fresh ids from kFreshIdBase.
class WlDictionary {
public:
    explicit WlDictionary(FeatureId first_id = 0) : table_(first_id) {}

    FeatureId intern(const WlSignature& s);
    [[nodiscard]] std::optional<FeatureId> find(const WlSignature& s) const { return table_.find(s); }
    void freeze() noexcept { frozen_ = true; }
    [[nodiscard]] bool frozen() const noexcept { return frozen_; }
    [[nodiscard]] std::size_t size() const noexcept { return table_.size(); }
    [[nodiscard]] FeatureId first_id() const noexcept { return table_.first_id(); }
    [[nodiscard]] FeatureId end_id() const noexcept { return table_.end_id(); }
    [[nodiscard]] const Dictionary<WlSignature, WlSignatureHash>& table() const noexcept { return table_; }

private:
    Dictionary<WlSignature, WlSignatureHash> table_;
    bool frozen_ = false;
};

/// One synchronous refinement step. Signatures are built from `labels`
/// (the pre-iteration ids) for every graph, then mapped through `dict`:
/// interned in collection order, vertices ascending, while the dictionary is
/// open; looked up (with per-graph fresh ids) once it is frozen.
[[nodiscard]] std::vector<LabelIds> wl_iteration(std::span<const Graph> graphs, std::span<const LabelIds> labels,
                                                 WlDictionary& dict);

/// Graph-level form: relabels vertex-labelled graphs, with labels rendered as
/// decimal ids. The initial labels are interned into `initial` first.
[[nodiscard]] std::vector<Graph> wl_iteration(std::span<const Graph> graphs, Dictionary<Label>& initial,
                                              WlDictionary& dict);

/// Fitted relabeling state for h iterations.
class WlRefinement {
public:
    /// Learns the dictionaries from `graphs` and returns their labelings at
    /// levels 0..h. Throws IncompatibleInput for unlabeled graphs.
    std::vector<std::vector<LabelIds>> fit(std::span<const Graph> graphs, std::size_t iterations);
    /// Labelings of new graphs through the frozen dictionaries.
    [[nodiscard]] std::vector<std::vector<LabelIds>> apply(std::span<const Graph> graphs) const;

    [[nodiscard]] std::size_t iterations() const noexcept { return levels_.size(); }
    [[nodiscard]] const Dictionary<Label>& initial() const noexcept { return initial_; }
    [[nodiscard]] const std::vector<WlDictionary>& levels() const noexcept { return levels_; }

private:
    Dictionary<Label> initial_;
    std::vector<WlDictionary> levels_;
};

/// Renders one level's labeling as graphs for the base kernel.
[[nodiscard]] std::vector<Graph> relabeled(std::span<const Graph> graphs, std::span<const LabelIds> labels);

/// K = sum over levels 0..h of the base kernel on the level's relabeled graphs.
class WeisfeilerLehmanFittedKernel final : public FittedKernel {
public:
    WeisfeilerLehmanFittedKernel(const WeisfeilerLehmanParams& params, std::span<const Graph> graphs);

    [[nodiscard]] std::size_t size() const override { return size_; }
    [[nodiscard]] const std::vector<double>& fit_diagonal() const override { return diagonal_; }
    [[nodiscard]] KernelMatrix fit_matrix() const override;
    [[nodiscard]] Evaluation evaluate(std::span<const Graph> queries) const override;

    [[nodiscard]] const WlRefinement& refinement() const noexcept { return refinement_; }
    [[nodiscard]] const std::vector<std::shared_ptr<const FittedKernel>>& levels() const noexcept { return levels_; }

private:
    std::size_t size_ = 0;
    WlRefinement refinement_;
    std::vector<std::shared_ptr<const FittedKernel>> levels_;
    std::vector<double> diagonal_;
};

}  // namespace gkl
