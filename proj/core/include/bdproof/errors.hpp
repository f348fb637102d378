// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace bdproof {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text or JSON.
struct ParseError : Error {
    using Error::Error;
};

// Well-formed input that violates a documented invariant
// (probability mass != 1, constant out of range, bad index, ...).
struct ValidationError : Error {
    using Error::Error;
};

struct UnknownGeneratorError : Error {
    using Error::Error;
};

struct UnknownStateError : Error {
    using Error::Error;
};

// expected_value over a map that misses a support state.
struct MissingValueError : Error {
    using Error::Error;
};

struct NotNonexpansiveError : Error {
    using Error::Error;
};

// Raised when an operation requires a valid certificate and the checker
// rejected the one supplied.
struct InvalidProofError : Error {
    using Error::Error;
};

} // namespace bdproof
