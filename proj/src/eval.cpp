#include "tsbench/eval.hpp"

#include <cmath>
#include <set>
#include <string>

#include "tsbench/errors.hpp"

namespace tsbench {

ForecastResult walk_forward(Forecaster& model, const SplitSeries& split,
                            bool refit_each_step) {
    const std::size_t need = model.context_size();
    if (split.train.size() < need)
        throw ContextTooShort("training partition has " +
                              std::to_string(split.train.size()) +
                              " observations, model needs " + std::to_string(need));

    std::vector<Observation> context = split.train.points();
    std::vector<double> closes = split.train.closes();

    ForecastResult result;
    result.ticker = split.train.ticker();
    result.model = std::string(model.name());
    result.rows.reserve(split.test.size());

    for (const auto& obs : split.test.points()) {
        if (refit_each_step)
            model.fit(PriceSeries(split.train.ticker(), context));
        const double predicted = model.predict(closes);
        result.rows.push_back(ForecastRow{obs.date, obs.close, predicted});
        context.push_back(obs);  // actuals feed back, predictions never do
        closes.push_back(obs.close);
    }
    return result;
}

double mae(const ForecastResult& result) {
    if (result.rows.empty()) throw EmptyResult();
    double sum = 0.0;
    for (const auto& row : result.rows) sum += std::abs(row.actual - row.predicted);
    return sum / static_cast<double>(result.rows.size());
}

double rmse(const ForecastResult& result) {
    if (result.rows.empty()) throw EmptyResult();
    double sum = 0.0;
    for (const auto& row : result.rows) {
        double d = row.actual - row.predicted;
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(result.rows.size()));
}

ErrorReport build_error_report(std::span<const ForecastResult> results) {
    ErrorReport report;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& r : results) {
        if (!seen.emplace(r.ticker, r.model).second)
            throw DuplicateCell("duplicate cell (" + r.ticker + ", " + r.model + ")");
        ErrorCell cell{r.ticker, r.model, mae(r), rmse(r)};
        // power-mean inequality; a violation means the metrics are broken
        if (cell.rmse < cell.mae - 1e-12)
            throw Error("rmse < mae for (" + r.ticker + ", " + r.model + ")");
        report.cells.push_back(std::move(cell));
    }
    return report;
}

}  // namespace tsbench
