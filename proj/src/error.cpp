/**
 * Copyright 2026 The polysched Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "polysched/error.hpp"

namespace polysched {

const char *to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BadInitialSchedule: return "BadInitialSchedule";
    case ErrorKind::IncompleteSchedule: return "IncompleteSchedule";
    case ErrorKind::UnsupportedAccess: return "UnsupportedAccess";
    case ErrorKind::FullyScheduledStatement: return "FullyScheduledStatement";
    case ErrorKind::IllegalDistribution: return "IllegalDistribution";
    case ErrorKind::ConfigInfeasible: return "ConfigInfeasible";
    case ErrorKind::UnknownCost: return "UnknownCost";
    case ErrorKind::BadGroup: return "BadGroup";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::NonAffine: return "NonAffine";
    case ErrorKind::ConflictingPlan: return "ConflictingPlan";
    case ErrorKind::NotABand: return "NotABand";
    case ErrorKind::BandNotTilable: return "BandNotTilable";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::UnboundedDomain: return "UnboundedDomain";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace polysched
