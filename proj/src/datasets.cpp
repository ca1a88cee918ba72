#include "gkl/datasets.hpp"

#include "gkl/archive.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

namespace gkl {

namespace fs = std::filesystem;

namespace {

struct Line {
    std::size_t number;  // 1-based line in the file
    std::string_view text;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

/// Non-blank lines of `content`, trimmed, with their original line numbers.
std::vector<Line> split_lines(std::string_view content) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t at = 0;
    while (at <= content.size()) {
        const auto end = std::min(content.find('\n', at), content.size());
        ++number;
        const auto text = trim(content.substr(at, end - at));
        if (!text.empty()) lines.push_back({number, text});
        at = end + 1;
    }
    return lines;
}

std::string where(const fs::path& file, std::size_t line) {
    return file.filename().string() + ":" + std::to_string(line);
}

std::int64_t parse_int(std::string_view token, const fs::path& file, std::size_t line) {
    token = trim(token);
    std::int64_t value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || end != token.data() + token.size()) {
        raise(ErrorKind::ParseError, where(file, line) + ": expected an integer, got '" + std::string(token) + "'");
    }
    return value;
}

double parse_real(std::string_view token, const fs::path& file, std::size_t line) {
    token = trim(token);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || end != token.data() + token.size()) {
        raise(ErrorKind::ParseError, where(file, line) + ": expected a number, got '" + std::string(token) + "'");
    }
    return value;
}

std::vector<std::string_view> split_commas(std::string_view s) {
    std::vector<std::string_view> parts;
    std::size_t at = 0;
    while (true) {
        const auto comma = s.find(',', at);
        parts.push_back(s.substr(at, comma == std::string_view::npos ? std::string_view::npos : comma - at));
        if (comma == std::string_view::npos) break;
        at = comma + 1;
    }
    return parts;
}

fs::path tu_file(const fs::path& dir, const std::string& name, const char* suffix) {
    return dir / (name + "_" + suffix + ".txt");
}

// `lines` views into `content`, which lives on the heap so moving a TextFile
// (short files sit in the small-string buffer otherwise) keeps them valid.
struct TextFile {
    fs::path path;
    std::unique_ptr<const std::string> content;
    std::vector<Line> lines;
};

std::optional<TextFile> load_optional(const fs::path& path) {
    if (!fs::exists(path)) return std::nullopt;
    TextFile f{path, std::make_unique<const std::string>(read_file(path)), {}};
    f.lines = split_lines(*f.content);
    return f;
}

TextFile load_required(const fs::path& path) {
    auto f = load_optional(path);
    if (!f) raise(ErrorKind::CorruptDataset, "missing required file " + path.string());
    return std::move(*f);
}

void require_count(const TextFile& f, std::size_t expected, const char* what) {
    if (f.lines.size() != expected) {
        raise(ErrorKind::CorruptDataset, f.path.filename().string() + ": expected " + std::to_string(expected) + " " +
                                             what + " lines, found " + std::to_string(f.lines.size()));
    }
}

std::vector<Attribute> parse_attributes(const TextFile& f) {
    std::vector<Attribute> rows;
    rows.reserve(f.lines.size());
    for (const auto& line : f.lines) {
        Attribute row;
        for (auto token : split_commas(line.text)) row.push_back(parse_real(token, f.path, line.number));
        if (!rows.empty() && row.size() != rows.front().size()) {
            raise(ErrorKind::ParseError, where(f.path, line.number) + ": " + std::to_string(row.size()) +
                                             " values where previous lines have " +
                                             std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Holds an exclusive flock on a file for the lifetime of the object.
class DirectoryLock {
public:
    explicit DirectoryLock(const fs::path& dir) {
        const auto path = dir / ".gkl.lock";
        fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
        if (fd_ < 0) raise(ErrorKind::IoError, "cannot open lock file " + path.string());
        while (::flock(fd_, LOCK_EX) != 0) {
            if (errno != EINTR) {
                ::close(fd_);
                raise(ErrorKind::IoError, "cannot lock " + path.string());
            }
        }
    }
    ~DirectoryLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    DirectoryLock(const DirectoryLock&) = delete;
    DirectoryLock& operator=(const DirectoryLock&) = delete;

private:
    int fd_ = -1;
};

struct Url {
    std::string origin;  // scheme://host[:port]
    std::string path;    // without trailing slash
};

Url split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) raise(ErrorKind::FetchError, "malformed base URL '" + url + "'");
    const auto path_at = url.find('/', scheme_end + 3);
    Url out;
    out.origin = url.substr(0, path_at);
    out.path = path_at == std::string::npos ? "" : url.substr(path_at);
    while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
    return out;
}

std::string download(const std::string& base_url, const std::string& file) {
    const auto url = split_url(base_url);
    httplib::Client client(url.origin);
    client.set_follow_location(true);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);
    const auto target = url.path + "/" + file;
    auto res = client.Get(target);
    if (!res) {
        raise(ErrorKind::FetchError,
              "cannot reach " + url.origin + target + ": " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw FetchFailure(res->status, "HTTP " + std::to_string(res->status) + " for " + url.origin + target);
    }
    return std::move(res->body);
}

}  // namespace

FetchFailure::FetchFailure(int status, const std::string& message)
    : Error(ErrorKind::FetchError, message), status_(status) {}

std::vector<std::int64_t> DatasetBundle::classes() const {
    std::set<std::int64_t> distinct(targets.begin(), targets.end());
    return {distinct.begin(), distinct.end()};
}

fs::path resolve_cache_dir(const std::optional<fs::path>& explicit_dir) {
    if (explicit_dir && !explicit_dir->empty()) return *explicit_dir;
    if (const char* env = std::getenv("GKL_CACHE_DIR"); env && *env) return env;
    if (const char* xdg = std::getenv("XDG_DATA_HOME"); xdg && *xdg) return fs::path(xdg) / "gkl";
    if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".local" / "share" / "gkl";
    return fs::current_path() / "gkl_data";
}

bool has_required_files(const fs::path& dir, const std::string& name) {
    for (const char* suffix : {"A", "graph_indicator", "graph_labels"}) {
        if (!fs::is_regular_file(tu_file(dir, name, suffix))) return false;
    }
    return true;
}

FetchResult fetch_dataset(const std::string& name, const std::string& base_url,
                          const std::optional<fs::path>& cache_dir) {
    if (name.empty() || name.find_first_of("/\\") != std::string::npos || name == "." || name == "..") {
        raise(ErrorKind::FetchError, "invalid dataset name '" + name + "'");
    }
    const auto root = resolve_cache_dir(cache_dir);
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec) raise(ErrorKind::IoError, "cannot create cache directory " + root.string() + ": " + ec.message());

    const auto target = root / name;
    DirectoryLock lock(root);
    if (has_required_files(target, name)) return {target, true};

    const auto archive = download(base_url, name + ".zip");
    const auto staging = root / ("." + name + ".partial");
    fs::remove_all(staging);
    try {
        (void)extract_zip_flat(archive, staging);
        for (const char* suffix : {"A", "graph_indicator", "graph_labels"}) {
            if (!fs::is_regular_file(tu_file(staging, name, suffix))) {
                raise(ErrorKind::CorruptDataset,
                      "archive " + name + ".zip lacks " + tu_file({}, name, suffix).string());
            }
        }
        fs::remove_all(target);
        fs::rename(staging, target);
    } catch (...) {
        fs::remove_all(staging, ec);
        throw;
    }
    return {target, false};
}

DatasetBundle parse_tu(const fs::path& dir, const std::string& name) {
    const auto indicator = load_required(tu_file(dir, name, "graph_indicator"));
    const auto graph_labels = load_required(tu_file(dir, name, "graph_labels"));
    const auto adjacency = load_required(tu_file(dir, name, "A"));
    const auto node_labels = load_optional(tu_file(dir, name, "node_labels"));
    const auto edge_labels = load_optional(tu_file(dir, name, "edge_labels"));
    const auto node_attributes = load_optional(tu_file(dir, name, "node_attributes"));
    const auto edge_attributes = load_optional(tu_file(dir, name, "edge_attributes"));

    DatasetBundle bundle;
    bundle.name = name;
    bundle.has_node_labels = node_labels.has_value();
    bundle.has_edge_labels = edge_labels.has_value();
    bundle.has_node_attributes = node_attributes.has_value();
    bundle.has_edge_attributes = edge_attributes.has_value();

    for (const auto& line : graph_labels.lines) {
        bundle.targets.push_back(parse_int(line.text, graph_labels.path, line.number));
    }
    const std::size_t graph_count = bundle.targets.size();
    if (graph_count == 0) raise(ErrorKind::CorruptDataset, graph_labels.path.filename().string() + " is empty");

    // Global vertex v (0-based) -> (graph, local index).
    const std::size_t n = indicator.lines.size();
    std::vector<std::size_t> graph_of(n);
    std::vector<Vertex> local_of(n);
    std::vector<std::size_t> order(graph_count, 0);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& line = indicator.lines[v];
        const auto id = parse_int(line.text, indicator.path, line.number);
        if (id < 1 || static_cast<std::size_t>(id) > graph_count) {
            raise(ErrorKind::CorruptDataset, where(indicator.path, line.number) + ": graph id " + std::to_string(id) +
                                                 " outside 1.." + std::to_string(graph_count));
        }
        graph_of[v] = static_cast<std::size_t>(id - 1);
        local_of[v] = order[graph_of[v]]++;
    }
    for (std::size_t g = 0; g < graph_count; ++g) {
        if (order[g] == 0) {
            raise(ErrorKind::CorruptDataset, "graph " + std::to_string(g + 1) + " has no vertices in " +
                                                 indicator.path.filename().string());
        }
    }

    if (node_labels) require_count(*node_labels, n, "node label");
    if (node_attributes) require_count(*node_attributes, n, "node attribute");
    if (edge_labels) require_count(*edge_labels, adjacency.lines.size(), "edge label");
    if (edge_attributes) require_count(*edge_attributes, adjacency.lines.size(), "edge attribute");

    std::vector<std::vector<Label>> vlabels(node_labels ? graph_count : 0);
    std::vector<std::vector<Attribute>> vattrs(node_attributes ? graph_count : 0);
    if (node_labels) {
        for (std::size_t g = 0; g < graph_count; ++g) vlabels[g].resize(order[g]);
        for (std::size_t v = 0; v < n; ++v) {
            const auto& line = node_labels->lines[v];
            vlabels[graph_of[v]][local_of[v]] = std::to_string(parse_int(line.text, node_labels->path, line.number));
        }
    }
    if (node_attributes) {
        const auto rows = parse_attributes(*node_attributes);
        for (std::size_t g = 0; g < graph_count; ++g) vattrs[g].resize(order[g]);
        for (std::size_t v = 0; v < n; ++v) vattrs[graph_of[v]][local_of[v]] = rows[v];
    }
    std::vector<Attribute> eattr_rows;
    if (edge_attributes) eattr_rows = parse_attributes(*edge_attributes);

    std::vector<std::vector<Edge>> edges(graph_count);
    std::vector<EdgeMap<Label>> elabels(edge_labels ? graph_count : 0);
    std::vector<EdgeMap<Attribute>> eattrs(edge_attributes ? graph_count : 0);
    std::vector<std::set<Edge>> seen(graph_count);
    for (std::size_t r = 0; r < adjacency.lines.size(); ++r) {
        const auto& line = adjacency.lines[r];
        const auto parts = split_commas(line.text);
        if (parts.size() != 2) {
            raise(ErrorKind::ParseError, where(adjacency.path, line.number) + ": expected 'i, j'");
        }
        const auto a = parse_int(parts[0], adjacency.path, line.number);
        const auto b = parse_int(parts[1], adjacency.path, line.number);
        for (auto id : {a, b}) {
            if (id < 1 || static_cast<std::size_t>(id) > n) {
                raise(ErrorKind::CorruptDataset, where(adjacency.path, line.number) + ": vertex " +
                                                     std::to_string(id) + " outside 1.." + std::to_string(n));
            }
        }
        const auto u = static_cast<std::size_t>(a - 1);
        const auto v = static_cast<std::size_t>(b - 1);
        const auto g = graph_of[u];
        if (graph_of[v] != g) {
            raise(ErrorKind::CorruptDataset, where(adjacency.path, line.number) + ": edge " + std::to_string(a) + ", " +
                                                 std::to_string(b) + " joins graph " + std::to_string(g + 1) +
                                                 " and graph " + std::to_string(graph_of[v] + 1));
        }
        if (u == v) {
            bundle.warnings.push_back({where(adjacency.path, line.number), "self-loop on vertex " + std::to_string(a) +
                                                                               " dropped"});
            continue;
        }
        const Edge e(local_of[u], local_of[v]);
        std::optional<Label> label;
        if (edge_labels) {
            const auto& l = edge_labels->lines[r];
            label = std::to_string(parse_int(l.text, edge_labels->path, l.number));
        }
        if (!seen[g].insert(e).second) {
            if (label && elabels[g].at(e) != *label) {
                bundle.warnings.push_back({where(adjacency.path, line.number),
                                           "conflicting label for repeated edge; first occurrence kept"});
            }
            continue;
        }
        edges[g].push_back(e);
        if (label) elabels[g].emplace(e, std::move(*label));
        if (edge_attributes) eattrs[g].emplace(e, eattr_rows[r]);
    }

    bundle.graphs.reserve(graph_count);
    for (std::size_t g = 0; g < graph_count; ++g) {
        Decorations d;
        if (node_labels) d.vertex_labels = std::move(vlabels[g]);
        if (node_attributes) d.vertex_attributes = std::move(vattrs[g]);
        if (edge_labels) d.edge_labels = std::move(elabels[g]);
        if (edge_attributes) d.edge_attributes = std::move(eattrs[g]);
        bundle.graphs.emplace_back(order[g], std::move(edges[g]), std::move(d));
    }
    return bundle;
}

namespace {

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
    std::ofstream out(path, std::ios::binary);
    for (const auto& l : lines) out << l << '\n';
    if (!out) raise(ErrorKind::IoError, "cannot write " + path.string());
}

std::string join_reals(const Attribute& row) {
    std::string s;
    char buf[32];
    for (std::size_t i = 0; i < row.size(); ++i) {
        const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, row[i]);
        (void)ec;
        if (i) s += ", ";
        s.append(buf, end);
    }
    return s;
}

}  // namespace

void write_tu(const DatasetBundle& bundle, const fs::path& dir) {
    fs::create_directories(dir);
    const auto& name = bundle.name;
    std::vector<std::string> indicator, a, glabels, nlabels, elabels, nattrs, eattrs;
    std::size_t base = 0;
    for (std::size_t g = 0; g < bundle.graphs.size(); ++g) {
        const auto& graph = bundle.graphs[g];
        glabels.push_back(std::to_string(bundle.targets.at(g)));
        for (Vertex v = 0; v < graph.order(); ++v) {
            indicator.push_back(std::to_string(g + 1));
            if (bundle.has_node_labels) nlabels.push_back(graph.vertex_label(v));
            if (bundle.has_node_attributes) nattrs.push_back(join_reals(graph.vertex_attributes()->at(v)));
        }
        for (std::size_t e = 0; e < graph.size(); ++e) {
            const auto [u, v] = graph.edges()[e];
            for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
                a.push_back(std::to_string(base + x + 1) + ", " + std::to_string(base + y + 1));
                if (bundle.has_edge_labels) elabels.push_back(graph.edge_label(e));
                if (bundle.has_edge_attributes) eattrs.push_back(join_reals(graph.edge_attributes()->at(e)));
            }
        }
        base += graph.order();
    }
    write_lines(tu_file(dir, name, "graph_indicator"), indicator);
    write_lines(tu_file(dir, name, "A"), a);
    write_lines(tu_file(dir, name, "graph_labels"), glabels);
    if (bundle.has_node_labels) write_lines(tu_file(dir, name, "node_labels"), nlabels);
    if (bundle.has_edge_labels) write_lines(tu_file(dir, name, "edge_labels"), elabels);
    if (bundle.has_node_attributes) write_lines(tu_file(dir, name, "node_attributes"), nattrs);
    if (bundle.has_edge_attributes) write_lines(tu_file(dir, name, "edge_attributes"), eattrs);
}

DatasetBundle load_dataset(const std::string& name, const std::string& base_url,
                           const std::optional<fs::path>& cache_dir) {
    return parse_tu(fetch_dataset(name, base_url, cache_dir).directory, name);
}

}  // namespace gkl
