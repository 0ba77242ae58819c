#include "tsbench/series.hpp"

#include <algorithm>
#include <cmath>

#include "tsbench/errors.hpp"

namespace tsbench {

PriceSeries::PriceSeries(std::string ticker, std::vector<Observation> points)
    : ticker_(std::move(ticker)), points_(std::move(points)) {
    if (points_.empty()) throw InvalidSeries("series needs at least one observation");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!std::isfinite(p.close) || p.close <= 0.0)
            throw InvalidSeries("close at " + format_date(p.date) +
                                " is not a positive finite price");
        if (i > 0 && !(points_[i - 1].date < p.date))
            throw InvalidSeries("dates not strictly increasing at " +
                                format_date(p.date));
    }
}

std::vector<double> PriceSeries::closes() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.close);
    return out;
}

SummaryStats summary_stats(const PriceSeries& series) {
    const auto& pts = series.points();
    double sum = 0.0;
    double lo = pts.front().close;
    double hi = lo;
    for (const auto& p : pts) {
        sum += p.close;
        lo = std::min(lo, p.close);
        hi = std::max(hi, p.close);
    }
    const double n = static_cast<double>(pts.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& p : pts) {
        double d = p.close - mean;
        ss += d * d;
    }
    return SummaryStats{mean, lo, hi, std::sqrt(ss / n), pts.size()};
}

double autocorrelation(const PriceSeries& series, int lag) {
    const auto& pts = series.points();
    const int n = static_cast<int>(pts.size());
    if (lag < 0 || lag >= n)
        throw LagOutOfRange("lag " + std::to_string(lag) + " outside [0, " +
                            std::to_string(n) + ")");
    const SummaryStats st = summary_stats(series);
    const double denom = st.sd * st.sd * static_cast<double>(n);  // T * s^2
    if (denom == 0.0) throw ZeroVariance();
    if (lag == 0) return 1.0;
    double num = 0.0;
    for (int t = lag; t < n; ++t)
        num += (pts[static_cast<std::size_t>(t)].close - st.mean) *
               (pts[static_cast<std::size_t>(t - lag)].close - st.mean);
    return num / denom;
}

LagPairs lag_pairs(const PriceSeries& series, int lag) {
    const auto& pts = series.points();
    const int n = static_cast<int>(pts.size());
    if (lag < 1 || lag >= n)
        throw LagOutOfRange("lag " + std::to_string(lag) + " outside [1, " +
                            std::to_string(n) + ")");
    LagPairs out;
    out.lag = lag;
    out.pairs.reserve(static_cast<std::size_t>(n - lag));
    for (int t = 0; t + lag < n; ++t)
        out.pairs.emplace_back(pts[static_cast<std::size_t>(t)].close,
                               pts[static_cast<std::size_t>(t + lag)].close);
    return out;
}

SplitSeries split_at(const PriceSeries& series, const Date& boundary) {
    std::vector<Observation> train, test;
    for (const auto& p : series.points()) {
        if (p.date < boundary)
            train.push_back(p);
        else
            test.push_back(p);
    }
    if (train.empty())
        throw EmptyPartition("no observations before " + format_date(boundary));
    if (test.empty())
        throw EmptyPartition("no observations on or after " + format_date(boundary));
    return SplitSeries{PriceSeries(series.ticker(), std::move(train)),
                       PriceSeries(series.ticker(), std::move(test))};
}

}  // namespace tsbench
