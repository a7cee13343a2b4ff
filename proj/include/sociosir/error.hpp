/*
 * Copyright (C) 2026 The sociosir Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sociosir {

enum class ErrorCode {
    RejectOrder,
    RejectRange,
    RejectMissing,
    NonFinite,
    NegativeState,
    SingularSigma,
    ParseError,
    EmptyTrajectory,
};

constexpr std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::RejectOrder: return "REJECT_ORDER";
    case ErrorCode::RejectRange: return "REJECT_RANGE";
    case ErrorCode::RejectMissing: return "REJECT_MISSING";
    case ErrorCode::NonFinite: return "NONFINITE";
    case ErrorCode::NegativeState: return "NEGATIVE_STATE";
    case ErrorCode::SingularSigma: return "SINGULAR_SIGMA";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::EmptyTrajectory: return "EMPTY_TRAJECTORY";
    }
    return "UNKNOWN";
}

/// Broad error families; the CLI maps each to an exit status.
enum class ErrorFamily { Validation, Numerical, Parse };

constexpr ErrorFamily family_of(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NonFinite:
    case ErrorCode::NegativeState:
    case ErrorCode::SingularSigma:
        return ErrorFamily::Numerical;
    case ErrorCode::ParseError:
        return ErrorFamily::Parse;
    default:
        return ErrorFamily::Validation;
    }
}

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what)
        , code_(code)
        , message_(what)
    {
    }

    ErrorCode code() const noexcept { return code_; }
    /// what() without the leading code.
    const std::string& message() const noexcept { return message_; }

private:
    ErrorCode code_;
    std::string message_;
};

} // namespace sociosir
