#include "gkl/feature_map.hpp"

#include <algorithm>

namespace gkl {

FeatureMap FeatureMap::from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    FeatureMap out;
    for (const auto& [id, value] : entries) {
        if (!out.entries_.empty() && out.entries_.back().first == id) {
            out.entries_.back().second += value;
        } else {
            out.entries_.emplace_back(id, value);
        }
    }
    std::erase_if(out.entries_, [](const Entry& e) { return e.second == 0.0; });
    return out;
}

FeatureMap FeatureMap::from_counts(const std::unordered_map<FeatureId, double>& counts) {
    return from_entries(std::vector<Entry>(counts.begin(), counts.end()));
}

double FeatureMap::get(FeatureId id) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                               [](const Entry& e, FeatureId key) { return e.first < key; });
    return it != entries_.end() && it->first == id ? it->second : 0.0;
}

double FeatureMap::total() const {
    double sum = 0.0;
    for (const auto& e : entries_) sum += e.second;
    return sum;
}

double FeatureMap::dot(const FeatureMap& other) const {
    double sum = 0.0;
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() && b != other.entries_.end()) {
        if (a->first < b->first) {
            ++a;
        } else if (b->first < a->first) {
            ++b;
        } else {
            sum += a->second * b->second;
            ++a;
            ++b;
        }
    }
    return sum;
}

FeatureMap FeatureMap::scaled(double factor) const {
    FeatureMap out = *this;
    for (auto& e : out.entries_) e.second *= factor;
    if (factor == 0.0) out.entries_.clear();
    return out;
}

}  // namespace gkl
