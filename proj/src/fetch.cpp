#include "tsbench/fetch.hpp"

#include <thread>

#include "tsbench/httplib_config.hpp"

#include "tsbench/errors.hpp"

namespace tsbench {

namespace {

void replace_all(std::string& text, std::string_view token, std::string_view value) {
    std::size_t pos = 0;
    while ((pos = text.find(token, pos)) != std::string::npos) {
        text.replace(pos, token.size(), value);
        pos += value.size();
    }
}

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string target;  // /path?query
};

SplitUrl split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw InvalidValue("URL \"" + url + "\" has no scheme");
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

std::string substitute_url(std::string_view url_template, std::string_view ticker,
                           const Date& start, const Date& end) {
    std::string url(url_template);
    for (std::string_view token : {"{ticker}", "{start}", "{end}"})
        if (url.find(token) == std::string::npos)
            throw InvalidValue("url_template is missing the " + std::string(token) +
                               " placeholder");
    replace_all(url, "{ticker}", ticker);
    replace_all(url, "{start}", format_date(start));
    replace_all(url, "{end}", format_date(end));
    return url;
}

std::string fetch_remote(std::string_view url_template, std::string_view ticker,
                         const Date& start, const Date& end,
                         const FetchOptions& options) {
    const std::string url = substitute_url(url_template, ticker, start, end);
    const SplitUrl parts = split_url(url);

    httplib::Client client(parts.origin);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(
        options.timeout));
    client.set_read_timeout(options.timeout);
    client.set_follow_location(true);

    auto backoff = options.initial_backoff;
    bool timed_out = false;
    for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(backoff);
            backoff *= 2;
        }
        auto res = client.Get(parts.target);
        if (res) {
            if (res->status == 200) return res->body;
            throw HttpStatus(res->status);  // a definite server answer; no retry
        }
        timed_out = res.error() == httplib::Error::ConnectionTimeout ||
                    res.error() == httplib::Error::Read ||
                    res.error() == httplib::Error::Write;
    }
    if (timed_out)
        throw Timeout("request to " + url + " timed out after " +
                      std::to_string(options.max_retries + 1) + " attempts");
    throw NetworkUnavailable("cannot reach " + parts.origin + " after " +
                             std::to_string(options.max_retries + 1) + " attempts");
}

}  // namespace tsbench
