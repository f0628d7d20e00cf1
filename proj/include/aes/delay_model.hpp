// Copyright 2026 The AES Authors.
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

#include <cstddef>
#include <string>
#include <variant>

#include "aes/rng.hpp"

namespace aes {

struct ConstantDelay {
  double t = 1.0;
};

/// Duration proportional to genome size (comparators, rules, layer nodes).
struct LinearInSizeDelay {
  double tUnit = 1.0;
};

/// Gaussian whose mean and standard deviation drift linearly with the
/// generation count; samples are clamped from below at `floor`.
struct GenerationGaussianDelay {
  double meanSlope = 2.0;
  double meanIntercept = 60.0;
  double stdSlope = 0.5;
  double stdIntercept = 10.0;
  double floor = 1.0;
};

using DelayModel = std::variant<ConstantDelay, LinearInSizeDelay, GenerationGaussianDelay>;

/// Throws ConfigError for non-positive durations, unit costs or floors.
void validate(const DelayModel& model);

/// Deterministic part of the Gaussian model: the delay for a given
/// standard-normal draw `z`.
double gaussianDelay(const GenerationGaussianDelay& model, std::size_t generation, double z);

double sampleDelay(const DelayModel& model, std::size_t genomeSize, std::size_t generation,
                   Rng& rng);

std::string describe(const DelayModel& model);

}  // namespace aes
