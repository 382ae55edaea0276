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
#ifndef POLYSCHED_ERROR_HPP_
#define POLYSCHED_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace polysched {

enum class ErrorKind {
  // exact-math
  SingularGram,
  Overflow,
  // scop-model
  SchemaError,
  DimensionMismatch,
  BadInitialSchedule,
  IncompleteSchedule,
  // dependence-analysis
  UnsupportedAccess,
  // scheduler-core
  FullyScheduledStatement,
  IllegalDistribution,
  ConfigInfeasible,
  // config-engine
  UnknownCost,
  BadGroup,
  ParseError,
  UnknownSymbol,
  NonAffine,
  ConflictingPlan,
  // postprocess
  NotABand,
  BandNotTilable,
  NotApplicable,
  // verify-emit
  UnboundedDomain,
  BudgetExceeded,
  Internal,
};

const char *to_string(ErrorKind kind);

/// The single exception type thrown by the library. Callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace polysched

#endif  // POLYSCHED_ERROR_HPP_
