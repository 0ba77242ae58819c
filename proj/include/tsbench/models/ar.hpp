#pragma once

#include <span>
#include <vector>

#include "tsbench/series.hpp"

namespace tsbench {

/// AR(p): y_t = c + sum_j phi_j * y_{t-j} + e_t.
struct ArModel {
    double intercept = 0.0;
    std::vector<double> coeffs;  // coeffs[j-1] = phi_j (j = 1 is yesterday)

    int order() const { return static_cast<int>(coeffs.size()); }
};

/// Ordinary least squares over every training row with full lag context,
/// solved through the normal equations with partial pivoting. Deterministic.
/// Throws TooShort (need at least p + 2 observations) and SingularDesign
/// (e.g. a constant training series).
ArModel ar_fit(const PriceSeries& train, int order);

/// One-step forecast from p lagged closes, most recent last.
/// Throws WrongLagCount when lags.size() != p.
double ar_predict(const ArModel& model, std::span<const double> lags);

}  // namespace tsbench
