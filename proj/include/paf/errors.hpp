// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace paf {

/// Base class for errors raised while reading or writing files.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// A tensor file that does not start with the "PAFT" magic.
class BadMagicError : public IoError {
public:
    explicit BadMagicError(const std::string& what) : IoError(what) {}
};

/// A tensor file whose format version is not supported.
class VersionMismatchError : public IoError {
public:
    explicit VersionMismatchError(const std::string& what) : IoError(what) {}
};

/// A tensor file that ends before the declared payload does.
class TruncatedPayloadError : public IoError {
public:
    explicit TruncatedPayloadError(const std::string& what) : IoError(what) {}
};

/// A structurally broken tensor file (bad dtype, bad rank, trailing bytes).
class FormatError : public IoError {
public:
    explicit FormatError(const std::string& what) : IoError(what) {}
};

/// Request for a skeleton preset that does not exist.
class UnknownPresetError : public std::runtime_error {
public:
    explicit UnknownPresetError(const std::string& what) : std::runtime_error(what) {}
};

/// A JSON document that does not match the expected schema.
class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

/// A fixture bundle directory with missing or inconsistent contents.
class BundleError : public std::runtime_error {
public:
    explicit BundleError(const std::string& what) : std::runtime_error(what) {}
};

/// Inputs that disagree on the skeleton they were built for.
class SkeletonMismatchError : public std::runtime_error {
public:
    explicit SkeletonMismatchError(const std::string& what) : std::runtime_error(what) {}
};

/// Render inputs that exist but cannot be drawn.
class RenderError : public std::runtime_error {
public:
    explicit RenderError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace paf
