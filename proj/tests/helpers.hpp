#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "tsbench/rng.hpp"
#include "tsbench/series.hpp"

namespace tsbench::testing {

/// Series with consecutive synthetic dates; closes are all that matter.
inline PriceSeries make_series(std::vector<double> closes,
                               std::string ticker = "TEST") {
    std::vector<Observation> points;
    points.reserve(closes.size());
    Date d{2015, 1, 1};
    for (double c : closes) {
        points.push_back(Observation{d, c});
        ++d.day;
        if (d.day > 28) {
            d.day = 1;
            ++d.month;
            if (d.month > 12) {
                d.month = 1;
                ++d.year;
            }
        }
    }
    return PriceSeries(std::move(ticker), std::move(points));
}

/// Positive random walk for property tests.
inline std::vector<double> random_walk(SplitMix64& rng, std::size_t n,
                                       double start = 100.0, double step = 1.0) {
    std::vector<double> out;
    out.reserve(n);
    double level = start;
    for (std::size_t i = 0; i < n; ++i) {
        level += step * (rng.next_double() - 0.5);
        level = std::max(level, 1.0);
        out.push_back(level);
    }
    return out;
}

/// Direct transcription of the lag-k correlation formula; the oracle the
/// production code is checked against.
inline double acf_bruteforce(const std::vector<double>& y, int k) {
    const int n = static_cast<int>(y.size());
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= n;
    double s2 = 0.0;
    for (double v : y) s2 += (v - mean) * (v - mean);
    s2 /= n;
    double num = 0.0;
    for (int t = k; t < n; ++t) num += (y[t] - mean) * (y[t - k] - mean);
    return num / (n * s2);
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

/// CSV writer used only by round-trip tests; %.17g keeps doubles exact.
inline std::string to_ohlcv_csv(const PriceSeries& series) {
    std::string out = "Date,Open,High,Low,Close,Adj Close,Volume\n";
    for (const auto& p : series.points()) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                      format_date(p.date).c_str(), p.close, p.close * 1.01,
                      p.close * 0.99, p.close, p.close, 1000);
        out += buf;
    }
    return out;
}

}  // namespace tsbench::testing
