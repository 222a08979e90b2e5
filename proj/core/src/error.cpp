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

#include "sfspn/error.hpp"

namespace sfspn {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::NotPseudoIrreducible: return "NotPseudoIrreducible";
    case Errc::NonBijectiveResult: return "NonBijectiveResult";
    case Errc::FixtureNotBijective: return "FixtureNotBijective";
    case Errc::RankOutOfRange: return "RankOutOfRange";
    case Errc::MalformedFile: return "MalformedFile";
    case Errc::DivergedOrbit: return "DivergedOrbit";
    case Errc::DegenerateSeed: return "DegenerateSeed";
    case Errc::NumericalBlowup: return "NumericalBlowup";
    case Errc::ValueOutOfRange: return "ValueOutOfRange";
    case Errc::TooShort: return "TooShort";
    case Errc::IdenticalParams: return "IdenticalParams";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::EmptyPlaintext: return "EmptyPlaintext";
    case Errc::InvalidKeys: return "InvalidKeys";
    case Errc::MalformedContainer: return "MalformedContainer";
    case Errc::EmptyImage: return "EmptyImage";
    case Errc::DegenerateImage: return "DegenerateImage";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace sfspn
