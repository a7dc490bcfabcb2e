/*
 * Copyright 2026 The eeval Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
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

namespace eeval {

/// Failure categories shared by every module.
enum class Errc {
  MalformedManifest,
  DuplicateSampleId,
  MissingField,
  LengthMismatch,
  BadMagic,
  TruncatedFile,
  NonFiniteValue,
  InvalidLength,
  ShapeMismatch,
  FrameTooSmall,
  DimMismatch,
  TooFewSamples,
  NonFiniteInput,
  SqrtFailure,
  BadGrid,
  TooShort,
  NoForeground,
  EmptyTrajectory,
  TooFewPoints,
  DegenerateSample,
  NoConsensus,
  SchemaError,
  AllNull,
  EmptyGroundTruth,
  OutOfRange,
  BadTheta,
  NoGroups,
  NegativeWeight,
  ConstantInput,
  DegenerateFold,
  NoResponses,
  NoRecords,
  IoError,
  ConfigError,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

  Errc code() const noexcept { return code_; }
  /// The text without the leading code name.
  const std::string& message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string message_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace eeval
