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

#include "aes/engine.hpp"

namespace aes {

void validate(const AesConfig& config) {
  if (config.K == 0) throw ConfigError("K must be positive");
  if (config.M == 0) throw ConfigError("M must be positive");
  if (config.M > config.K) throw ConfigError("M must not exceed K");
  if (config.L >= config.K) throw ConfigError("L must be smaller than K");
  if (config.crossoverRate < 0.0 || config.crossoverRate > 1.0 || config.mutationRate < 0.0 ||
      config.mutationRate > 1.0) {
    throw ConfigError("variation rates must lie in [0, 1]");
  }
}

}  // namespace aes
