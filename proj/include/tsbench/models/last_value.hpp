#pragma once

#include <span>

#include "tsbench/errors.hpp"

namespace tsbench {

/// Random-walk baseline: tomorrow equals today.
inline double last_value_predict(std::span<const double> history) {
    if (history.empty()) throw EmptyHistory();
    return history.back();
}

}  // namespace tsbench
