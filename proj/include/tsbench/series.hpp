#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tsbench/date.hpp"

namespace tsbench {

struct Observation {
    Date date;
    double close = 0.0;
};

/// One ticker's daily closes, strictly ordered by date. Construction
/// validates the invariants (dates strictly increasing, closes finite and
/// positive, at least one observation); instances are immutable afterwards.
class PriceSeries {
public:
    PriceSeries(std::string ticker, std::vector<Observation> points);

    const std::string& ticker() const { return ticker_; }
    const std::vector<Observation>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const Observation& front() const { return points_.front(); }
    const Observation& back() const { return points_.back(); }

    /// Close prices in date order.
    std::vector<double> closes() const;

private:
    std::string ticker_;
    std::vector<Observation> points_;
};

struct SummaryStats {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double sd = 0.0;  // population form (divide by count)
    std::size_t count = 0;
};

struct SplitSeries {
    PriceSeries train;
    PriceSeries test;
};

struct LagPairs {
    int lag = 1;
    std::vector<std::pair<double, double>> pairs;  // (y_t, y_{t+k})
};

SummaryStats summary_stats(const PriceSeries& series);

/// Lag-k autocorrelation r_k = sum_{t=k}^{T-1} (y_t - m)(y_{t-k} - m) / (T s^2)
/// with m the sample mean and s^2 the population variance. r_0 is exactly 1.
/// Throws LagOutOfRange unless 0 <= k < T, ZeroVariance for constant series.
double autocorrelation(const PriceSeries& series, int lag);

/// The (y_t, y_{t+k}) pairs behind a lag plot, in time order.
/// Throws LagOutOfRange unless 1 <= k < T.
LagPairs lag_pairs(const PriceSeries& series, int lag);

/// Partition at a boundary date: strictly-before goes to train, on-or-after
/// goes to test. Throws EmptyPartition when either side would be empty.
SplitSeries split_at(const PriceSeries& series, const Date& boundary);

}  // namespace tsbench
