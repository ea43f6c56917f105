// Copyright 2026 The PIMS Authorization Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace pims::sharing {

// (t, n) threshold: any t of n pieces suffice, t - 1 reveal nothing.
struct ThresholdPolicy {
  std::uint32_t t = 1;
  std::uint32_t n = 1;

  // Throws Error(kInvalidPolicy) unless 1 <= t <= n.
  void validate() const;

  friend bool operator==(const ThresholdPolicy&, const ThresholdPolicy&) = default;
};

}  // namespace pims::sharing
