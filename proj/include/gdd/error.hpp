#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gdd {

/// Malformed or inconsistent input data (files, configs, signal lengths).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation produced non-finite values or failed to converge.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the fit loop when the loss stops being finite.
class FitDivergence : public NumericalError {
public:
    FitDivergence(std::size_t iteration, double loss)
        : NumericalError("fit diverged at iteration " + std::to_string(iteration) +
                         " (loss = " + std::to_string(loss) + ")"),
          iteration_(iteration) {}

    std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

}  // namespace gdd
