#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tsbench/series.hpp"

namespace tsbench {

inline constexpr std::string_view kOhlcvHeader =
    "Date,Open,High,Low,Close,Adj Close,Volume";

/// Parses a Yahoo-export daily OHLCV CSV and keeps the Close column
/// (Adj Close when use_adj_close is set). Row-level OHLC inconsistencies
/// (low above the open/close body, high below it) are appended to *warnings
/// when given; structural problems are hard errors: BadHeader, BadRow,
/// OutOfOrder (all with the offending line number), EmptyCsv.
PriceSeries parse_ohlcv_csv(std::string_view text, std::string_view ticker,
                            std::vector<std::string>* warnings = nullptr,
                            bool use_adj_close = false);

/// Data-quality scan: flags day-over-day moves above 50% (possible
/// unadjusted split) and calendar gaps above 10 days. Warnings only.
std::vector<std::string> validate(const PriceSeries& series);

/// Reads and parses data_dir/<TICKER>.csv. Throws FileError if missing.
PriceSeries load_series(const std::filesystem::path& data_dir, std::string_view ticker,
                        std::vector<std::string>* warnings = nullptr,
                        bool use_adj_close = false);

}  // namespace tsbench
