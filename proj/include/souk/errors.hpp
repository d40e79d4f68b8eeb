// Copyright (c) 2026 the souk authors. All rights reserved.
// Licensed under the Apache License, Version 2.0. See the LICENSE
// file in the project root for full license information.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace souk {

// Wire-visible error vocabulary. The first five names are part of the
// node's response surface and must not be renamed.
enum class ErrorCode : uint8_t {
    Ok = 0,
    InputDoesNotExistError,
    ValidationError,
    InsufficientCapabilitiesError,
    DuplicateTransactionError,
    DoubleSpendError,
    InvalidSignature,
    AmountMismatch,
    MissingCapabilities,
    SchemaNotFound,
    SchemaViolation,
    InvalidWorkflowHead,
    UncommittedDependency,
    InvalidOpSequence,
    SubmitRefused,
    TransportError,
    PrepareError,
    SignError,
    Unresolved,
    RecoveryInconsistency,
    ConfigError,
    InternalError,
};

inline const char* error_name(ErrorCode c)
{
    switch (c)
    {
        case ErrorCode::Ok: return "Ok";
        case ErrorCode::InputDoesNotExistError: return "InputDoesNotExistError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::InsufficientCapabilitiesError: return "InsufficientCapabilitiesError";
        case ErrorCode::DuplicateTransactionError: return "DuplicateTransactionError";
        case ErrorCode::DoubleSpendError: return "DoubleSpendError";
        case ErrorCode::InvalidSignature: return "InvalidSignature";
        case ErrorCode::AmountMismatch: return "AmountMismatch";
        case ErrorCode::MissingCapabilities: return "MissingCapabilities";
        case ErrorCode::SchemaNotFound: return "SchemaNotFound";
        case ErrorCode::SchemaViolation: return "SchemaViolation";
        case ErrorCode::InvalidWorkflowHead: return "InvalidWorkflowHead";
        case ErrorCode::UncommittedDependency: return "UncommittedDependency";
        case ErrorCode::InvalidOpSequence: return "InvalidOpSequence";
        case ErrorCode::SubmitRefused: return "SubmitRefused";
        case ErrorCode::TransportError: return "TransportError";
        case ErrorCode::PrepareError: return "PrepareError";
        case ErrorCode::SignError: return "SignError";
        case ErrorCode::Unresolved: return "Unresolved";
        case ErrorCode::RecoveryInconsistency: return "RecoveryInconsistency";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::InternalError: return "InternalError";
    }
    return "InternalError";
}

// Lightweight status value used by validators and the storage layer.
class Status
{
public:
    Status() = default;
    Status(ErrorCode code, std::string detail) : code_(code), detail_(std::move(detail)) {}

    static Status ok() { return {}; }
    static Status error(ErrorCode code, std::string detail = {})
    {
        return Status(code, std::move(detail));
    }

    bool is_ok() const { return code_ == ErrorCode::Ok; }
    explicit operator bool() const { return is_ok(); }

    ErrorCode code() const { return code_; }
    const std::string& detail() const { return detail_; }
    std::string to_string() const
    {
        if (is_ok())
            return "Ok";
        return detail_.empty() ? std::string(error_name(code_))
                               : std::string(error_name(code_)) + ": " + detail_;
    }

private:
    ErrorCode code_ = ErrorCode::Ok;
    std::string detail_;
};

// Minimal expected-like wrapper; value access requires ok().
template <typename T>
class Result
{
public:
    Result(T value) : value_(std::move(value)) {}
    Result(Status status) : status_(std::move(status)) {}
    Result(ErrorCode code, std::string detail) : status_(code, std::move(detail)) {}

    bool is_ok() const { return status_.is_ok(); }
    explicit operator bool() const { return is_ok(); }

    const Status& status() const { return status_; }
    T& value() { return *value_; }
    const T& value() const { return *value_; }
    T& operator*() { return *value_; }
    const T& operator*() const { return *value_; }
    T* operator->() { return &*value_; }
    const T* operator->() const { return &*value_; }

private:
    std::optional<T> value_;
    Status status_;
};

} // namespace souk
