#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace socbench {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input files (predictions, ground truth, tables).
class InputError : public Error {
public:
    using Error::Error;
};

/// Predictions and ground truth do not cover the same set of record ids.
class IdMismatchError : public InputError {
public:
    IdMismatchError(std::vector<std::string> missing_predictions,
                    std::vector<std::string> unknown_predictions);

    /// Ground-truth ids with no prediction.
    const std::vector<std::string>& missing_predictions() const noexcept { return missing_; }
    /// Prediction ids with no ground-truth record.
    const std::vector<std::string>& unknown_predictions() const noexcept { return unknown_; }

private:
    std::vector<std::string> missing_;
    std::vector<std::string> unknown_;
};

}  // namespace socbench
