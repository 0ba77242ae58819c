#pragma once

#include <span>
#include <string>
#include <vector>

#include "tsbench/forecaster.hpp"
#include "tsbench/series.hpp"

namespace tsbench {

struct ForecastRow {
    Date date;
    double actual = 0.0;
    double predicted = 0.0;
};

/// Aligned (date, actual, predicted) triples over one test partition.
struct ForecastResult {
    std::string ticker;
    std::string model;
    std::vector<ForecastRow> rows;
};

struct ErrorCell {
    std::string ticker;
    std::string model;
    double mae = 0.0;
    double rmse = 0.0;
};

/// One row per (ticker, model) cell, in insertion order.
struct ErrorReport {
    std::vector<ErrorCell> cells;
};

/// One-step-ahead walk over the test partition: every prediction sees the
/// actual closes up to (not including) the predicted day, starting from the
/// training tail. Actuals are always fed back; predictions never are. With
/// refit_each_step the model is refit on the expanding context before every
/// step (off by default, and off for the headline numbers).
ForecastResult walk_forward(Forecaster& model, const SplitSeries& split,
                            bool refit_each_step = false);

double mae(const ForecastResult& result);
double rmse(const ForecastResult& result);

/// Throws DuplicateCell when any (ticker, model) pair repeats.
ErrorReport build_error_report(std::span<const ForecastResult> results);

}  // namespace tsbench
