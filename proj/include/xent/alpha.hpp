#pragma once

#include "xent/errors.hpp"

namespace xent {

/// Renyi order: a positive real different from 1, or the explicit Shannon
/// limit marker used instead of plugging alpha = 1 into closed forms.
class AlphaOrder {
public:
    explicit AlphaOrder(double value) : value_(value), shannon_(false) {
        if (!(value > 0.0) || value == 1.0)
            throw InvalidParameters(
                "alpha must be > 0 and != 1 (use AlphaOrder::shannon() for the limit)");
    }

    static AlphaOrder shannon() { return AlphaOrder(); }

    bool is_shannon() const noexcept { return shannon_; }

    double value() const {
        if (shannon_)
            throw InvalidParameters("AlphaOrder: Shannon limit has no numeric alpha");
        return value_;
    }

private:
    AlphaOrder() : value_(1.0), shannon_(true) {}

    double value_;
    bool shannon_;
};

}  // namespace xent
