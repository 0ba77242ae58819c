#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "tsbench/commands.hpp"
#include "tsbench/errors.hpp"
#include "tsbench/fetch.hpp"
#include "tsbench/httplib_config.hpp"

using namespace tsbench;

namespace {

const char* kTinyCsv =
    "Date,Open,High,Low,Close,Adj Close,Volume\n"
    "2020-01-02,100.0,101.0,99.0,100.5,100.5,1000\n"
    "2020-01-03,100.5,102.0,100.0,101.5,101.5,1100\n";

struct LocalServer {
    httplib::Server server;
    int port = 0;
    std::thread thread;

    explicit LocalServer() {
        server.Get("/ok", [](const httplib::Request&, httplib::Response& res) {
            res.set_content(kTinyCsv, "text/csv");
        });
        server.Get("/echo", [](const httplib::Request& req, httplib::Response& res) {
            res.set_content(req.get_param_value("ticker"), "text/plain");
        });
        server.Get("/slow", [](const httplib::Request&, httplib::Response& res) {
            std::this_thread::sleep_for(std::chrono::milliseconds(400));
            res.set_content("late", "text/plain");
        });
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~LocalServer() {
        server.stop();
        thread.join();
    }
};

FetchOptions fast_retry() {
    FetchOptions o;
    o.timeout = std::chrono::milliseconds(2000);
    o.initial_backoff = std::chrono::milliseconds(1);
    return o;
}

}  // namespace

TEST_CASE("placeholder substitution") {
    CHECK(substitute_url("http://h/{ticker}?a={start}&b={end}", "MSFT",
                         Date{2015, 1, 1}, Date{2021, 4, 30}) ==
          "http://h/MSFT?a=2015-01-01&b=2021-04-30");
    CHECK_THROWS_AS(substitute_url("http://h/{ticker}", "MSFT", Date{2015, 1, 1},
                                   Date{2021, 4, 30}),
                    InvalidValue);
}

TEST_CASE("status 200 returns the body") {
    LocalServer s;
    auto url = "http://127.0.0.1:" + std::to_string(s.port) +
               "/echo?ticker={ticker}&s={start}&e={end}";
    auto body = fetch_remote(url, "MSFT", Date{2015, 1, 1}, Date{2021, 4, 30},
                             fast_retry());
    CHECK(body == "MSFT");
}

TEST_CASE("non-200 raises HttpStatus without retries") {
    LocalServer s;
    auto url = "http://127.0.0.1:" + std::to_string(s.port) +
               "/missing?t={ticker}&s={start}&e={end}";
    try {
        fetch_remote(url, "MSFT", Date{2015, 1, 1}, Date{2021, 4, 30}, fast_retry());
        FAIL("expected HttpStatus");
    } catch (const HttpStatus& e) {
        CHECK(e.status == 404);
    }
}

TEST_CASE("unreachable host raises NetworkUnavailable after retries") {
    // a port nothing listens on
    auto url = "http://127.0.0.1:1/x?t={ticker}&s={start}&e={end}";
    CHECK_THROWS_AS(fetch_remote(url, "MSFT", Date{2015, 1, 1}, Date{2021, 4, 30},
                                 fast_retry()),
                    NetworkUnavailable);
}

TEST_CASE("a stalled response times out after retries") {
    LocalServer s;
    FetchOptions opts = fast_retry();
    opts.timeout = std::chrono::milliseconds(100);
    auto url = "http://127.0.0.1:" + std::to_string(s.port) +
               "/slow?t={ticker}&s={start}&e={end}";
    CHECK_THROWS_AS(
        fetch_remote(url, "MSFT", Date{2015, 1, 1}, Date{2021, 4, 30}, opts),
        Timeout);
}

TEST_CASE("the fetch command downloads, validates, and writes a ticker file") {
    LocalServer s;
    namespace fs = std::filesystem;
    const fs::path dir = "fetch_test_data";
    fs::remove_all(dir);
    RunConfig cfg;
    cfg.tickers = {"MSFT"};
    cfg.data_dir = dir;
    cfg.url_template = "http://127.0.0.1:" + std::to_string(s.port) +
                       "/ok?t={ticker}&s={start}&e={end}";
    std::ostringstream log;
    cmd_fetch(cfg, log);
    std::ifstream in(dir / "MSFT.csv", std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream body;
    body << in.rdbuf();
    CHECK(body.str() == kTinyCsv);
    fs::remove_all(dir);
}

TEST_CASE("transient failures are retried until success") {
    LocalServer s;
    std::atomic<int> hits{0};
    s.server.Get("/flaky", [&](const httplib::Request&, httplib::Response& res) {
        if (hits.fetch_add(1) < 2) {
            res.status = 500;  // not a transport failure: should NOT retry
            return;
        }
        res.set_content("late", "text/plain");
    });
    auto url = "http://127.0.0.1:" + std::to_string(s.port) +
               "/flaky?t={ticker}&s={start}&e={end}";
    // a 500 is a definite answer, so the very first call throws
    CHECK_THROWS_AS(fetch_remote(url, "MSFT", Date{2015, 1, 1}, Date{2021, 4, 30},
                                 fast_retry()),
                    HttpStatus);
    CHECK(hits.load() == 1);
}
