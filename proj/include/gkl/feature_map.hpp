#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gkl {

using FeatureId = std::uint64_t;

/// Ids handed out on the transform path for symbols absent from a fitted
/// dictionary. They live above every id a fit can produce, so they never
/// meet a fit-side dimension in a dot product.
inline constexpr FeatureId kFreshIdBase = FeatureId{1} << 63;

/// Sparse non-negative feature vector, sorted by id, without explicit zeros.
class FeatureMap {
public:
    using Entry = std::pair<FeatureId, double>;

    FeatureMap() = default;
    /// Entries may be unsorted and repeat ids; repeats are summed.
    static FeatureMap from_entries(std::vector<Entry> entries);
    static FeatureMap from_counts(const std::unordered_map<FeatureId, double>& counts);

    [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] double get(FeatureId id) const;
    [[nodiscard]] double total() const;
    [[nodiscard]] double dot(const FeatureMap& other) const;
    [[nodiscard]] double squared_norm() const { return dot(*this); }
    [[nodiscard]] FeatureMap scaled(double factor) const;

    friend bool operator==(const FeatureMap&, const FeatureMap&) = default;

private:
    std::vector<Entry> entries_;
};

/// Insertion-ordered interning table: the i-th distinct key seen gets id
/// `first_id() + i`.
template <typename Key, typename Hash = std::hash<Key>>
class Dictionary {
public:
    explicit Dictionary(FeatureId first_id = 0) : first_id_(first_id) {}

    FeatureId intern(const Key& key) {
        auto [it, inserted] = ids_.try_emplace(key, first_id_ + keys_.size());
        if (inserted) keys_.push_back(key);
        return it->second;
    }

    [[nodiscard]] std::optional<FeatureId> find(const Key& key) const {
        auto it = ids_.find(key);
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

    [[nodiscard]] std::size_t size() const noexcept { return keys_.size(); }
    [[nodiscard]] FeatureId first_id() const noexcept { return first_id_; }
    [[nodiscard]] FeatureId end_id() const noexcept { return first_id_ + keys_.size(); }
    /// Keys in id order.
    [[nodiscard]] const std::vector<Key>& keys() const noexcept { return keys_; }

private:
    FeatureId first_id_;
    std::unordered_map<Key, FeatureId, Hash> ids_;
    std::vector<Key> keys_;
};

/// Read-only view of a fitted dictionary that assigns fresh ids (from
/// kFreshIdBase upward) to unseen keys. One overlay serves one query graph,
/// which keeps results independent of query order.
template <typename Key, typename Hash = std::hash<Key>>
class FrozenLookup {
public:
    explicit FrozenLookup(const Dictionary<Key, Hash>& dict) : dict_(&dict) {}

    FeatureId operator()(const Key& key) {
        if (auto id = dict_->find(key)) return *id;
        auto [it, inserted] = fresh_.try_emplace(key, kFreshIdBase + fresh_.size());
        return it->second;
    }

    [[nodiscard]] std::size_t fresh_count() const noexcept { return fresh_.size(); }

private:
    const Dictionary<Key, Hash>* dict_;
    std::unordered_map<Key, FeatureId, Hash> fresh_;
};

}  // namespace gkl
