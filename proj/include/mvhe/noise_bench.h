/*
 * Copyright 2026 The mvhe Authors.
 *
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

#ifndef MVHE_NOISE_BENCH_H_
#define MVHE_NOISE_BENCH_H_

#include <cstddef>
#include <string>
#include <vector>

#include "mvhe/random.h"
#include "mvhe/scheme.h"

namespace mvhe {

struct NoiseBenchRow {
  std::string op;  // "fresh", "add" or "mult"
  std::size_t trials = 0;
  double predicted_std = 0.0;
  double measured_std = 0.0;  // root mean square of NoiseMeasure
  double error_rate = 0.0;
};

// Fresh encryptions, single sums and (mult keys only) single products of
// uniformly random bits.
std::vector<NoiseBenchRow> RunNoiseBench(const SecretKey& sk,
                                         std::size_t trials,
                                         RandomStream& stream);

}  // namespace mvhe

#endif  // MVHE_NOISE_BENCH_H_
