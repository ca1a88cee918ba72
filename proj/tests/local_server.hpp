#pragma once

// Must match the library's configuration of the header.
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <atomic>
#include <map>
#include <string>
#include <thread>

namespace support {

/// Serves fixed responses on 127.0.0.1 at an ephemeral port; unknown paths 404.
class LocalServer {
public:
    struct Response {
        int status = 200;
        std::string body;
    };

    explicit LocalServer(std::map<std::string, Response> routes) : routes_(std::move(routes)) {
        server_.Get(R"(/.*)", [this](const httplib::Request& req, httplib::Response& res) {
            ++hits_;
            auto it = routes_.find(req.path);
            if (it == routes_.end()) {
                res.status = 404;
                res.set_content("not found", "text/plain");
                return;
            }
            res.status = it->second.status;
            res.set_content(it->second.body, "application/zip");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~LocalServer() {
        server_.stop();
        thread_.join();
    }

    LocalServer(const LocalServer&) = delete;
    LocalServer& operator=(const LocalServer&) = delete;

    [[nodiscard]] std::string url(const std::string& prefix = "") const {
        return "http://127.0.0.1:" + std::to_string(port_) + prefix;
    }
    [[nodiscard]] int hits() const { return hits_; }

private:
    std::map<std::string, Response> routes_;
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> hits_{0};
};

}  // namespace support
