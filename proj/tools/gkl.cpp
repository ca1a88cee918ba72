// gkl: fetch datasets, compute kernel matrices, classify, benchmark.

#include "gkl/datasets.hpp"
#include "gkl/error.hpp"
#include "gkl/kernel.hpp"
#include "gkl/kernel_matrix.hpp"
#include "gkl/kernel_spec.hpp"
#include "gkl/parallel.hpp"
#include "gkl/pipeline.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct SourceOptions {
    std::string base_url = gkl::kDefaultBaseUrl;
    std::string cache_dir;
};

struct KernelOptions {
    std::string kernel;
    std::vector<std::string> params;
    bool normalize = false;
    std::size_t nystrom = 0;
    std::uint64_t seed = 0;
};

int exit_code_for(gkl::ErrorKind kind) {
    using gkl::ErrorKind;
    switch (kind) {
        case ErrorKind::FetchError:
        case ErrorKind::CorruptDataset:
        case ErrorKind::ParseError:
        case ErrorKind::IoError:
            return 1;
        case ErrorKind::NumericalError:
        case ErrorKind::DegenerateKernel:
            return 3;
        default:
            return 2;
    }
}

std::optional<fs::path> cache_arg(const SourceOptions& s) {
    if (s.cache_dir.empty()) return std::nullopt;
    return fs::path(s.cache_dir);
}

/// A dataset argument is either a directory holding <dir-name>_*.txt files
/// or a repository name resolved through the cache.
gkl::DatasetBundle load(const std::string& dataset, const SourceOptions& s) {
    const fs::path p(dataset);
    if (fs::is_directory(p)) {
        auto name = p.filename().string();
        if (name.empty()) name = p.parent_path().filename().string();
        return gkl::parse_tu(p, name);
    }
    return gkl::load_dataset(dataset, s.base_url, cache_arg(s));
}

gkl::KernelSpec build_spec(const KernelOptions& k) {
    auto spec = gkl::parse_spec(k.kernel, k.params);
    spec.normalize = k.normalize;
    if (k.nystrom > 0) spec.nystrom_components = k.nystrom;
    spec.seed = k.seed;
    gkl::validate(spec);
    return spec;
}

class Report {
public:
    explicit Report(std::ostream& out) : out_(out) {}

    void spec(const gkl::KernelSpec& s) {
        out_ << "spec:\n";
        std::string text = gkl::describe(s);
        std::size_t at = 0;
        while (at < text.size()) {
            const auto end = text.find('\n', at);
            out_ << "  " << text.substr(at, end - at) << '\n';
            if (end == std::string::npos) break;
            at = end + 1;
        }
    }
    void line(const std::string& key, const std::string& value) { out_ << key << ": " << value << '\n'; }
    void timing(const std::string& phase, double seconds) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f s", seconds);
        out_ << "time " << phase << ": " << buf << '\n';
    }
    void shape(const std::string& what, std::size_t r, std::size_t c) {
        out_ << "shape " << what << ": " << r << "x" << c << '\n';
    }
    void warnings(const std::vector<gkl::Warning>& ws) {
        out_ << "warnings: " << ws.size() << '\n';
        for (const auto& w : ws) out_ << "  warning [" << w.location << "] " << w.message << '\n';
    }

private:
    std::ostream& out_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int cmd_fetch(const std::string& name, const SourceOptions& s) {
    const auto r = gkl::fetch_dataset(name, s.base_url, cache_arg(s));
    std::cout << r.directory.string() << (r.cached ? " (cached)" : "") << '\n';
    return 0;
}

int cmd_compute(const std::string& dataset, const KernelOptions& k, const SourceOptions& s, const std::string& out) {
    const auto spec = build_spec(k);
    Report report(std::cout);
    report.spec(spec);
    auto start = std::chrono::steady_clock::now();
    const auto data = load(dataset, s);
    report.line("dataset", data.name + " (" + std::to_string(data.graphs.size()) + " graphs)");
    report.timing("load", seconds_since(start));

    start = std::chrono::steady_clock::now();
    gkl::GraphKernel kernel(spec);
    const auto matrix = kernel.fit_transform(data.graphs);
    report.timing("fit_transform", seconds_since(start));
    report.shape("fit", matrix.rows(), matrix.cols());

    if (!out.empty()) {
        start = std::chrono::steady_clock::now();
        gkl::write_csv(matrix, out);
        std::ofstream meta(out + ".meta");
        meta << "dataset=" << data.name << '\n'
             << "rows=" << matrix.rows() << '\n'
             << "cols=" << matrix.cols() << '\n'
             << gkl::describe(spec);
        if (!meta) gkl::raise(gkl::ErrorKind::IoError, "cannot write " + out + ".meta");
        report.timing("write", seconds_since(start));
        report.line("output", out);
    }
    auto ws = data.warnings;
    ws.insert(ws.end(), kernel.warnings().begin(), kernel.warnings().end());
    report.warnings(ws);
    return 0;
}

int cmd_classify(const std::string& dataset, const KernelOptions& k, const SourceOptions& s, double fraction,
                 double C) {
    const auto spec = build_spec(k);
    Report report(std::cout);
    report.spec(spec);
    const auto start = std::chrono::steady_clock::now();
    const auto data = load(dataset, s);
    report.line("dataset", data.name + " (" + std::to_string(data.graphs.size()) + " graphs, " +
                               std::to_string(data.classes().size()) + " classes)");
    report.timing("load", seconds_since(start));

    const auto r = gkl::classify(data, spec, fraction, k.seed, C);
    for (const auto& t : r.timings) report.timing(t.phase, t.seconds);
    report.shape("train", r.train_shape.first, r.train_shape.second);
    report.shape("test", r.test_shape.first, r.test_shape.second);
    auto ws = data.warnings;
    ws.insert(ws.end(), r.warnings.begin(), r.warnings.end());
    report.warnings(ws);
    std::cout << gkl::format_accuracy(r.accuracy) << '\n';
    return 0;
}

/// Benchmark parameters may be scoped to one kernel as "kernel:key=value".
std::vector<std::string> params_for(const std::string& kernel, const std::vector<std::string>& params) {
    std::vector<std::string> out;
    for (const auto& p : params) {
        const auto colon = p.find(':');
        const auto eq = p.find('=');
        if (colon != std::string::npos && (eq == std::string::npos || colon < eq)) {
            if (p.substr(0, colon) == kernel) out.push_back(p.substr(colon + 1));
        } else {
            out.push_back(p);
        }
    }
    return out;
}

int cmd_benchmark(const std::vector<std::string>& datasets, std::vector<std::string> kernels, const KernelOptions& k,
                  const SourceOptions& s, std::size_t repeats, const std::string& out) {
    if (kernels.empty()) {
        for (auto kind : gkl::kAllKernelKinds) kernels.emplace_back(gkl::to_string(kind));
    }
    if (repeats == 0) gkl::raise(gkl::ErrorKind::InvalidSpec, "--repeats must be at least 1");

    struct Row {
        std::string dataset, kernel, seconds;
    };
    std::vector<Row> rows;
    std::size_t successes = 0;
    for (const auto& dataset : datasets) {
        std::optional<gkl::DatasetBundle> data;
        std::string load_error;
        try {
            data = load(dataset, s);
        } catch (const gkl::Error& e) {
            load_error = e.what();
        }
        for (const auto& name : kernels) {
            if (!data) {
                std::cout << dataset << " " << name << ": NA (" << load_error << ")\n";
                rows.push_back({dataset, name, "NA"});
                continue;
            }
            try {
                KernelOptions ko = k;
                ko.kernel = name;
                ko.params = params_for(name, k.params);
                const auto spec = build_spec(ko);
                std::vector<double> times;
                for (std::size_t r = 0; r < repeats; ++r) {
                    const auto start = std::chrono::steady_clock::now();
                    gkl::GraphKernel kernel(spec);
                    (void)kernel.fit_transform(data->graphs);
                    times.push_back(seconds_since(start));
                }
                std::sort(times.begin(), times.end());
                const double median = times.size() % 2 ? times[times.size() / 2]
                                                        : 0.5 * (times[times.size() / 2 - 1] + times[times.size() / 2]);
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.6f", median);
                rows.push_back({data->name, name, buf});
                std::cout << data->name << " " << name << ": " << buf << " s (median of " << repeats << ")\n";
                ++successes;
            } catch (const gkl::Error& e) {
                std::cout << data->name << " " << name << ": NA (" << e.what() << ")\n";
                rows.push_back({data->name, name, "NA"});
            }
        }
    }
    std::ofstream csv(out);
    csv << "dataset,kernel,seconds\n";
    for (const auto& r : rows) csv << r.dataset << ',' << r.kernel << ',' << r.seconds << '\n';
    if (!csv) gkl::raise(gkl::ErrorKind::IoError, "cannot write " + out);
    std::cout << "timings: " << out << '\n';
    return successes > 0 ? 0 : 2;
}

void add_kernel_options(CLI::App* cmd, KernelOptions& k, bool kernel_required) {
    auto* opt = cmd->add_option("--kernel", k.kernel, "Kernel name");
    if (kernel_required) opt->required();
    cmd->add_option("--param", k.params, "Kernel parameter name=value (repeatable)");
    cmd->add_flag("--normalize", k.normalize, "Cosine-normalise the kernel matrix");
    cmd->add_option("--nystrom", k.nystrom, "Nystrom landmark count (0 = exact)");
    cmd->add_option("--seed", k.seed, "Seed for every random choice");
}

void add_source_options(CLI::App* cmd, SourceOptions& s) {
    cmd->add_option("--base-url", s.base_url, "Dataset repository URL");
    cmd->add_option("--cache-dir", s.cache_dir, "Dataset cache directory (default: $GKL_CACHE_DIR)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph kernels: compute kernel matrices and classify graph datasets"};
    app.require_subcommand(1);
    std::size_t threads = 0;
    app.add_option("--threads", threads, "Worker thread cap (0 = all cores)");

    SourceOptions source;
    KernelOptions kernel;
    std::string name;
    std::vector<std::string> names;
    std::vector<std::string> kernels;
    std::string out;
    double fraction = 0.1;
    double C = 1.0;
    std::size_t repeats = 1;

    auto* fetch = app.add_subcommand("fetch", "Download a dataset into the cache");
    fetch->add_option("name", name, "Dataset name")->required();
    add_source_options(fetch, source);

    auto* compute = app.add_subcommand("compute", "Compute the kernel matrix of a dataset");
    compute->add_option("dataset", name, "Dataset name or directory")->required();
    add_kernel_options(compute, kernel, true);
    compute->add_option("--out", out, "Matrix CSV path");
    add_source_options(compute, source);

    auto* classify = app.add_subcommand("classify", "Train and evaluate an SVM on a random split");
    classify->add_option("dataset", name, "Dataset name or directory")->required();
    add_kernel_options(classify, kernel, true);
    classify->add_option("--test-fraction", fraction, "Fraction of graphs held out")->check(CLI::Range(0.0, 1.0));
    classify->add_option("--C", C, "SVM box constraint")->check(CLI::PositiveNumber);
    add_source_options(classify, source);

    auto* bench = app.add_subcommand("benchmark", "Time fit_transform per dataset and kernel");
    bench->add_option("datasets", names, "Dataset names or directories")->required();
    bench->add_option("--kernel", kernels, "Kernel (repeatable; default: all)");
    bench->add_option("--param", kernel.params, "name=value or kernel:name=value (repeatable)");
    bench->add_flag("--normalize", kernel.normalize, "Cosine-normalise");
    bench->add_option("--seed", kernel.seed, "Seed");
    bench->add_option("--repeats", repeats, "Repetitions per cell; the median is reported");
    bench->add_option("--out", out, "Timing CSV path")->required();
    add_source_options(bench, source);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // usage problems are input errors; --help is still a success
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    gkl::set_max_threads(threads);

    try {
        if (*fetch) return cmd_fetch(name, source);
        if (*compute) return cmd_compute(name, kernel, source, out);
        if (*classify) return cmd_classify(name, kernel, source, fraction, C);
        if (*bench) return cmd_benchmark(names, kernels, kernel, source, repeats, out);
    } catch (const gkl::FetchFailure& e) {
        std::cerr << "FetchError(" << e.status() << "): " << e.detail() << '\n';
        return 1;
    } catch (const gkl::Error& e) {
        std::cerr << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "IoError: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
