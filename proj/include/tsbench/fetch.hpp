#pragma once

#include <chrono>
#include <string>
#include <string_view>

#include "tsbench/date.hpp"

namespace tsbench {

struct FetchOptions {
    std::chrono::milliseconds timeout{30000};
    int max_retries = 3;  // retries after the first attempt
    std::chrono::milliseconds initial_backoff{1000};
};

/// Fills {ticker}, {start}, {end} into the template. Throws InvalidValue if
/// any placeholder is missing.
std::string substitute_url(std::string_view url_template, std::string_view ticker,
                           const Date& start, const Date& end);

/// One GET on the substituted URL. Returns the body on 200. Non-2xx answers
/// raise HttpStatus immediately; transport failures are retried with
/// exponential backoff before raising Timeout or NetworkUnavailable.
std::string fetch_remote(std::string_view url_template, std::string_view ticker,
                         const Date& start, const Date& end,
                         const FetchOptions& options = {});

}  // namespace tsbench
