/* Copyright 2026 The SFSPN Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sfspn {

/// Failure categories surfaced by the library. Every throwing operation
/// reports exactly one of these through sfspn::Error.
enum class Errc {
  ZeroInverse,
  NotPseudoIrreducible,
  NonBijectiveResult,
  FixtureNotBijective,
  RankOutOfRange,
  MalformedFile,
  DivergedOrbit,
  DegenerateSeed,
  NumericalBlowup,
  ValueOutOfRange,
  TooShort,
  IdenticalParams,
  EmptyInput,
  EmptyPlaintext,
  InvalidKeys,
  MalformedContainer,
  EmptyImage,
  DegenerateImage,
  DimensionMismatch,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sfspn
