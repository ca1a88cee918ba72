#pragma once

#include "gkl/error.hpp"
#include "gkl/graph.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gkl {

/// A labelled graph collection in the TU benchmark layout.
struct DatasetBundle {
    std::string name;
    std::vector<Graph> graphs;
    std::vector<std::int64_t> targets;  ///< class label per graph, as written in the file
    bool has_node_labels = false;
    bool has_edge_labels = false;
    bool has_node_attributes = false;
    bool has_edge_attributes = false;
    std::vector<Warning> warnings;

    /// Distinct targets in ascending order.
    [[nodiscard]] std::vector<std::int64_t> classes() const;
};

/// FetchError carrying the HTTP status of the failed download.
class FetchFailure : public Error {
public:
    FetchFailure(int status, const std::string& message);
    [[nodiscard]] int status() const noexcept { return status_; }

private:
    int status_;
};

inline constexpr const char* kDefaultBaseUrl = "https://www.chrsmrrs.com/graphkerneldatasets";

/// explicit > $GKL_CACHE_DIR > $XDG_DATA_HOME/gkl > ~/.local/share/gkl.
[[nodiscard]] std::filesystem::path resolve_cache_dir(const std::optional<std::filesystem::path>& explicit_dir = {});

struct FetchResult {
    std::filesystem::path directory;
    bool cached = false;
};

/// True when `dir` holds the files a TU dataset cannot do without.
[[nodiscard]] bool has_required_files(const std::filesystem::path& dir, const std::string& name);

/// Downloads {base_url}/{name}.zip into cache_dir/name unless already cached.
/// Concurrent callers serialise on a lock file in the cache directory.
/// Throws FetchError (HTTP status or transport failure) or CorruptDataset.
FetchResult fetch_dataset(const std::string& name, const std::string& base_url = kDefaultBaseUrl,
                          const std::optional<std::filesystem::path>& cache_dir = {});

/// Parses the TU files `<dir>/<name>_*.txt`.
[[nodiscard]] DatasetBundle parse_tu(const std::filesystem::path& dir, const std::string& name);

/// Writes `bundle` in the TU layout; each undirected edge is written in both
/// directions, as in the published files.
void write_tu(const DatasetBundle& bundle, const std::filesystem::path& dir);

/// fetch_dataset followed by parse_tu.
[[nodiscard]] DatasetBundle load_dataset(const std::string& name, const std::string& base_url = kDefaultBaseUrl,
                                         const std::optional<std::filesystem::path>& cache_dir = {});

}  // namespace gkl
