#include "local_server.hpp"

#include "gkl/archive.hpp"
#include "gkl/kernel_matrix.hpp"
#include "support.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string output;
};

Run gkl_run(const std::string& args) {
    const std::string cmd = std::string(GKL_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    Run r;
    char buf[4096];
    while (const auto n = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string mutag_dir() { return (support::data_dir() / "MUTAG").string(); }

std::string mutag_zip() {
    std::vector<gkl::ArchiveEntry> entries;
    for (const auto& f : fs::directory_iterator(support::data_dir() / "MUTAG"))
        entries.push_back({"MUTAG/" + f.path().filename().string(), read_file(f.path())});
    return gkl::write_zip(entries);
}

/// Output with the timing lines removed, for determinism comparisons.
std::string without_timings(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string out;
    while (std::getline(in, line))
        if (line.rfind("time ", 0) != 0) out += line + '\n';
    return out;
}

}  // namespace

TEST_CASE("usage errors exit 2") {
    CHECK(gkl_run("").code == 2);
    CHECK(gkl_run("compute " + mutag_dir()).code == 2);
    CHECK(gkl_run("compute " + mutag_dir() + " --kernel nope").code == 2);
    CHECK(gkl_run("compute " + mutag_dir() + " --kernel shortest_path --param bogus=1").code == 2);
    CHECK(gkl_run("classify " + mutag_dir() + " --kernel shortest_path --test-fraction 2").code == 2);
    CHECK(gkl_run("--help").code == 0);
}

TEST_CASE("fetch prints the path, marks cache hits and reports HTTP status") {
    support::LocalServer server({{"/MUTAG.zip", {200, mutag_zip()}}});
    const auto cache = support::scratch_dir("cli_cache");
    const std::string src = " --base-url " + server.url() + " --cache-dir " + cache.string();

    const auto first = gkl_run("fetch MUTAG" + src);
    CHECK(first.code == 0);
    CHECK(first.output.find((cache / "MUTAG").string()) != std::string::npos);
    CHECK(first.output.find("(cached)") == std::string::npos);
    const auto second = gkl_run("fetch MUTAG" + src);
    CHECK(second.code == 0);
    CHECK(second.output.find("(cached)") != std::string::npos);
    CHECK(server.hits() == 1);

    const auto missing = gkl_run("fetch NOPE" + src);
    CHECK(missing.code == 1);
    CHECK(missing.output.find("FetchError(404)") != std::string::npos);

    // a name resolves through the cache for the other commands too
    const auto out = support::scratch_dir("cli_byname") / "K.csv";
    const auto by_name = gkl_run("compute MUTAG --kernel vertex_histogram --out " + out.string() + src);
    CHECK(by_name.code == 0);
    CHECK(gkl::read_csv(out).rows() == 188);
}

TEST_CASE("compute writes a normalized matrix and its metadata") {
    const auto dir = support::scratch_dir("cli_compute");
    const auto out = dir / "K.csv";
    const auto r = gkl_run("compute " + mutag_dir() + " --kernel shortest_path --normalize --out " + out.string());
    REQUIRE(r.code == 0);
    CHECK(r.output.find("shape fit: 188x188") != std::string::npos);
    CHECK(r.output.find("time fit_transform: ") != std::string::npos);
    CHECK(r.output.find("kernel=shortest_path") != std::string::npos);
    const auto k = gkl::read_csv(out, gkl::MatrixRole::FitSquare);
    REQUIRE(k.rows() == 188);
    REQUIRE(k.cols() == 188);
    for (std::size_t i = 0; i < 188; ++i) CHECK(k(i, i) == doctest::Approx(1.0).epsilon(1e-9));
    const auto meta = read_file(out.string() + ".meta");
    CHECK(meta.find("rows=188") != std::string::npos);
    CHECK(meta.find("normalize=true") != std::string::npos);
}

TEST_CASE("compute failure modes and the h=0 identity") {
    const auto diverge = gkl_run("compute " + mutag_dir() + " --kernel random_walk --param lambda=10");
    CHECK(diverge.code == 2);
    CHECK(diverge.output.find("Divergent") != std::string::npos);

    const auto dir = support::scratch_dir("cli_wl0");
    const auto wl = dir / "wl.csv";
    const auto vh = dir / "vh.csv";
    REQUIRE(gkl_run("compute " + mutag_dir() + " --kernel weisfeiler_lehman --param h=0 --param base=vertex_histogram --out " +
                    wl.string())
                .code == 0);
    REQUIRE(gkl_run("compute " + mutag_dir() + " --kernel vertex_histogram --out " + vh.string()).code == 0);
    CHECK(read_file(wl) == read_file(vh));

    const auto missing = gkl_run("compute " + (dir / "ABSENT").string() + " --kernel vertex_histogram --base-url http://127.0.0.1:1 --cache-dir " + dir.string());
    CHECK(missing.code == 1);
}

TEST_CASE("classify prints the accuracy line and is deterministic") {
    const std::string args = "classify " + mutag_dir() + " --kernel shortest_path --test-fraction 0.1 --seed 0 --C 1";
    const auto a = gkl_run(args);
    REQUIRE(a.code == 0);
    const auto at = a.output.find("accuracy: ");
    REQUIRE(at != std::string::npos);
    const double pct = std::stod(a.output.substr(at + 10));
    CHECK(pct >= 75.0);
    CHECK(pct <= 95.0);
    CHECK(a.output.find("shape test: 19x169") != std::string::npos);
    const auto b = gkl_run(args);
    CHECK(without_timings(a.output) == without_timings(b.output));
}

TEST_CASE("benchmark writes one row per cell and marks failures NA") {
    const auto dir = support::scratch_dir("cli_bench");
    const auto out = dir / "t.csv";
    const auto r = gkl_run("benchmark " + mutag_dir() +
                           " --kernel vertex_histogram --kernel shortest_path --kernel random_walk"
                           " --param random_walk:lambda=10 --repeats 3 --out " + out.string());
    CHECK(r.code == 0);
    CHECK(r.output.find("median of 3") != std::string::npos);
    std::istringstream csv(read_file(out));
    std::vector<std::string> lines;
    for (std::string line; std::getline(csv, line);) lines.push_back(line);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "dataset,kernel,seconds");
    CHECK(lines[1].rfind("MUTAG,vertex_histogram,", 0) == 0);
    CHECK(lines[2].rfind("MUTAG,shortest_path,", 0) == 0);
    CHECK(lines[3] == "MUTAG,random_walk,NA");
    CHECK(lines[1].find("NA") == std::string::npos);

    const auto all_fail = gkl_run("benchmark " + mutag_dir() + " --kernel random_walk --param lambda=10 --out " + out.string());
    CHECK(all_fail.code == 2);
}
