#pragma once

#include <cassert>
#include <string>
#include <utility>
#include <variant>

namespace docpipe {

enum class ErrorKind {
    IoFailure,
    MalformedInput,
    UnsupportedFormat,
    UnsupportedPdfFeature,
    NotRasterizable,
    Timeout,
    RemoteFailure,
    MalformedResponse,
    OutputTruncated,
    GatewayFailure,
    UnparseableOutput,
    NoIdsFound,
    ArityMismatch,
    CoordinateUnresolvable,
    SpecOutOfBounds,
    UnroutableFormat,
    Exhausted,
    CorpusMissing,
    ConfigInvalid,
    CellMissing,
};

const char* to_string(ErrorKind kind);

struct Error {
    ErrorKind kind;
    std::string message;
};

/// Minimal expected-like value-or-error carrier. Engineered for the
/// failure taxonomy above; not a general monad.
template <typename T>
class Result {
  public:
    Result(T value) : state_(std::move(value)) {}
    Result(Error error) : state_(std::move(error)) {}

    bool ok() const { return std::holds_alternative<T>(state_); }
    explicit operator bool() const { return ok(); }

    T& value() {
        assert(ok());
        return std::get<T>(state_);
    }
    const T& value() const {
        assert(ok());
        return std::get<T>(state_);
    }
    T* operator->() { return &value(); }
    const T* operator->() const { return &value(); }
    T& operator*() { return value(); }
    const T& operator*() const { return value(); }

    const Error& error() const {
        assert(!ok());
        return std::get<Error>(state_);
    }

  private:
    std::variant<T, Error> state_;
};

template <>
class Result<void> {
  public:
    Result() = default;
    Result(Error error) : error_(std::move(error)), failed_(true) {}

    bool ok() const { return !failed_; }
    explicit operator bool() const { return ok(); }
    const Error& error() const {
        assert(failed_);
        return error_;
    }

  private:
    Error error_{};
    bool failed_ = false;
};

inline Error make_error(ErrorKind kind, std::string message) {
    return Error{kind, std::move(message)};
}

}  // namespace docpipe
