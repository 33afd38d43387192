//
// Copyright 2026 The DialAug Authors
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

#ifndef DIALAUG_ADAM_H_
#define DIALAUG_ADAM_H_

#include <cstddef>
#include <span>
#include <vector>

namespace dialaug {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void Validate() const;
};

struct AdamState {
  AdamState() = default;
  explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}

  std::vector<double> m;
  std::vector<double> v;
  long step = 0;
};

// One bias-corrected Adam update. Increments state.step first, so the
// first call uses t = 1.
void AdamStep(std::span<double> params, std::span<const double> grads,
              AdamState& state, const AdamConfig& config);

}  // namespace dialaug

#endif  // DIALAUG_ADAM_H_
