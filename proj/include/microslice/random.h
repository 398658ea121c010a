//
// Copyright 2026 The Microslice Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef MICROSLICE_RANDOM_H_
#define MICROSLICE_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace microslice {

using Rng = std::mt19937_64;

// Derives an independent sub-seed for a named phase ("clustering",
// "permutation", ...) from a root seed. Stable across runs and platforms.
uint64_t DeriveSeed(uint64_t root, std::string_view label);

}  // namespace microslice

#endif  // MICROSLICE_RANDOM_H_
