#include "tsbench/models/ar.hpp"

#include <cmath>
#include <string>

#include "tsbench/errors.hpp"

namespace tsbench {

namespace {

/// Gaussian elimination with partial pivoting on the (p+1)-dimensional
/// normal equations. Small systems only; no scaling tricks needed.
std::vector<double> solve_linear(std::vector<std::vector<double>> a,
                                 std::vector<double> b) {
    const std::size_t n = b.size();
    double scale = 1.0;
    for (const auto& r : a)
        for (double v : r) scale = std::max(scale, std::abs(v));
    const double tiny = 1e-10 * scale;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < tiny)
            throw SingularDesign("normal equations are singular (constant series?)");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

}  // namespace

ArModel ar_fit(const PriceSeries& train, int order) {
    if (order < 1) throw InvalidValue("AR order must be >= 1");
    const std::vector<double> y = train.closes();
    const std::size_t p = static_cast<std::size_t>(order);
    if (y.size() < p + 2)
        throw TooShort("AR(" + std::to_string(order) + ") needs at least " +
                       std::to_string(p + 2) + " observations, got " +
                       std::to_string(y.size()));

    // columns: [1, y_{t-1}, ..., y_{t-p}], one row per target y_t
    const std::size_t dim = p + 1;
    std::vector<std::vector<double>> ata(dim, std::vector<double>(dim, 0.0));
    std::vector<double> atb(dim, 0.0);
    std::vector<double> row(dim, 0.0);
    for (std::size_t t = p; t < y.size(); ++t) {
        row[0] = 1.0;
        for (std::size_t j = 1; j <= p; ++j) row[j] = y[t - j];
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = i; j < dim; ++j) ata[i][j] += row[i] * row[j];
            atb[i] += row[i] * y[t];
        }
    }
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < i; ++j) ata[i][j] = ata[j][i];

    std::vector<double> beta = solve_linear(std::move(ata), std::move(atb));
    ArModel model;
    model.intercept = beta[0];
    model.coeffs.assign(beta.begin() + 1, beta.end());
    for (double c : model.coeffs)
        if (!std::isfinite(c)) throw SingularDesign("non-finite AR coefficient");
    return model;
}

double ar_predict(const ArModel& model, std::span<const double> lags) {
    const std::size_t p = model.coeffs.size();
    if (lags.size() != p)
        throw WrongLagCount("expected " + std::to_string(p) + " lags, got " +
                            std::to_string(lags.size()));
    double y = model.intercept;
    for (std::size_t j = 1; j <= p; ++j) y += model.coeffs[j - 1] * lags[p - j];
    return y;
}

}  // namespace tsbench
