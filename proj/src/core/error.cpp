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

#include "eeval/core/error.hpp"

namespace eeval {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedManifest: return "MalformedManifest";
    case Errc::DuplicateSampleId: return "DuplicateSampleId";
    case Errc::MissingField: return "MissingField";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::BadMagic: return "BadMagic";
    case Errc::TruncatedFile: return "TruncatedFile";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::InvalidLength: return "InvalidLength";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::FrameTooSmall: return "FrameTooSmall";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::NonFiniteInput: return "NonFiniteInput";
    case Errc::SqrtFailure: return "SqrtFailure";
    case Errc::BadGrid: return "BadGrid";
    case Errc::TooShort: return "TooShort";
    case Errc::NoForeground: return "NoForeground";
    case Errc::EmptyTrajectory: return "EmptyTrajectory";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::DegenerateSample: return "DegenerateSample";
    case Errc::NoConsensus: return "NoConsensus";
    case Errc::SchemaError: return "SchemaError";
    case Errc::AllNull: return "AllNull";
    case Errc::EmptyGroundTruth: return "EmptyGroundTruth";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::BadTheta: return "BadTheta";
    case Errc::NoGroups: return "NoGroups";
    case Errc::NegativeWeight: return "NegativeWeight";
    case Errc::ConstantInput: return "ConstantInput";
    case Errc::DegenerateFold: return "DegenerateFold";
    case Errc::NoResponses: return "NoResponses";
    case Errc::NoRecords: return "NoRecords";
    case Errc::IoError: return "IoError";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace eeval
