// Copyright 2026 The modmark Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "modmark/error.hpp"

namespace modmark {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::PowerRangeExceeded: return "PowerRangeExceeded";
    case ErrorCode::BadQuadrature: return "BadQuadrature";
    case ErrorCode::EmptyKraus: return "EmptyKraus";
    case ErrorCode::NotStatePreserving: return "NotStatePreserving";
    case ErrorCode::NotMarkov: return "NotMarkov";
    case ErrorCode::BadSchurMatrix: return "BadSchurMatrix";
    case ErrorCode::ProjectionsDontCommuteWithD: return "ProjectionsDontCommuteWithD";
    case ErrorCode::UnitaryDoesntCommuteWithD: return "UnitaryDoesntCommuteWithD";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::Malformed: return "Malformed";
  }
  return "Unknown";
}

}  // namespace modmark
