//
// Copyright 2026 The PolyPlace Authors
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

#ifndef POLYPLACE_RANDOM_H_
#define POLYPLACE_RANDOM_H_

#include <cstdint>
#include <random>

namespace polyplace {

// Deterministic random stream seeded from a single 64-bit value. Two streams
// constructed with the same seed produce identical sequences on every
// platform, since std::mt19937_64 is fully specified by the standard.
class SeededRandom {
 public:
  explicit SeededRandom(uint64_t seed) : engine_(seed) {}

  uint64_t NextBits() { return engine_(); }

  // Uniform on the open interval (0, 1). Uses the top 52 bits and offsets by
  // half a step, so the result lies in [2^-53, 1 - 2^-53] and every value is
  // exactly representable.
  double UniformOpen() {
    const uint64_t k = engine_() >> 12;
    return (static_cast<double>(k) + 0.5) * 0x1.0p-52;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace polyplace

#endif  // POLYPLACE_RANDOM_H_
