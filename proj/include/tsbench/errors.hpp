#pragma once

#include <stdexcept>
#include <string>

namespace tsbench {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- series ---

struct InvalidSeries : Error {
    using Error::Error;
};

struct ZeroVariance : Error {
    ZeroVariance() : Error("series is constant (zero variance)") {}
};

struct LagOutOfRange : Error {
    explicit LagOutOfRange(const std::string& what) : Error(what) {}
};

struct EmptyPartition : Error {
    explicit EmptyPartition(const std::string& what) : Error(what) {}
};

// --- ingest ---

struct BadHeader : Error {
    explicit BadHeader(const std::string& got)
        : Error("bad CSV header: \"" + got + "\"") {}
};

struct BadRow : Error {
    BadRow(int line_no, const std::string& why)
        : Error("line " + std::to_string(line_no) + ": " + why), line(line_no) {}
    int line;
};

struct OutOfOrder : Error {
    OutOfOrder(int line_no, const std::string& why)
        : Error("line " + std::to_string(line_no) + ": " + why), line(line_no) {}
    int line;
};

struct EmptyCsv : Error {
    EmptyCsv() : Error("CSV has a header but no data rows") {}
};

struct FileError : Error {
    using Error::Error;
};

// --- fetch ---

struct HttpStatus : Error {
    explicit HttpStatus(int code)
        : Error("HTTP status " + std::to_string(code)), status(code) {}
    int status;
};

struct Timeout : Error {
    using Error::Error;
};

struct NetworkUnavailable : Error {
    using Error::Error;
};

// --- models ---

struct EmptyHistory : Error {
    EmptyHistory() : Error("history is empty") {}
};

struct TooShort : Error {
    explicit TooShort(const std::string& what) : Error(what) {}
};

struct SingularDesign : Error {
    explicit SingularDesign(const std::string& what) : Error(what) {}
};

struct WrongLagCount : Error {
    explicit WrongLagCount(const std::string& what) : Error(what) {}
};

struct WrongWindowLength : Error {
    explicit WrongWindowLength(const std::string& what) : Error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct NonFiniteLoss : Error {
    explicit NonFiniteLoss(const std::string& what) : Error(what) {}
};

// --- eval ---

struct ContextTooShort : Error {
    explicit ContextTooShort(const std::string& what) : Error(what) {}
};

struct EmptyResult : Error {
    EmptyResult() : Error("forecast result has no rows") {}
};

struct DuplicateCell : Error {
    explicit DuplicateCell(const std::string& what) : Error(what) {}
};

// --- config / usage ---

struct ConfigParseError : Error {
    using Error::Error;
};

struct UnknownKey : Error {
    explicit UnknownKey(const std::string& key)
        : Error("unknown config key \"" + key + "\"") {}
};

struct InvalidValue : Error {
    using Error::Error;
};

}  // namespace tsbench
