// Copyright 2026 The qbochner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qbochner {

enum class ErrorKind {
    NotHermitian,
    NonSquare,
    DimensionMismatch,
    InvalidTolerance,
    InvalidOrder,
    GroupMismatch,
    InternalInconsistency,
    InvalidDimension,
    EvenDimension,
    NotProjective,
    NotAFrame,
    InvalidFrame,
    NotNormalized,
    ShapeMismatch,
    NotConjugateSymmetric,
    CocycleMismatch,
    IndexOutOfRange,
    NotOddPrime,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NonSquare: return "NonSquare";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::InvalidTolerance: return "InvalidTolerance";
        case ErrorKind::InvalidOrder: return "InvalidOrder";
        case ErrorKind::GroupMismatch: return "GroupMismatch";
        case ErrorKind::InternalInconsistency: return "InternalInconsistency";
        case ErrorKind::InvalidDimension: return "InvalidDimension";
        case ErrorKind::EvenDimension: return "EvenDimension";
        case ErrorKind::NotProjective: return "NotProjective";
        case ErrorKind::NotAFrame: return "NotAFrame";
        case ErrorKind::InvalidFrame: return "InvalidFrame";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::NotConjugateSymmetric: return "NotConjugateSymmetric";
        case ErrorKind::CocycleMismatch: return "CocycleMismatch";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::NotOddPrime: return "NotOddPrime";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// All library failures are reported through this type; `kind()` is stable,
/// the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace qbochner
