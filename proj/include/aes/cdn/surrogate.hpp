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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "aes/cdn/assembly.hpp"

namespace aes::cdn {

struct NetworkFeatures {
  double depth = 0.0;      ///< layers on the longest input-to-output path
  double nodeCount = 0.0;
  std::array<double, kLayerTypes> histogram{};  ///< layer-type fractions
  double meanFanIn = 0.0;  ///< edges per layer
};

/// nullopt for an empty or cyclic graph.
std::optional<NetworkFeatures> extractFeatures(const NetworkGraph& g);

/// Ranges the hidden target is drawn from.
struct ProfileRanges {
  double depthMin = 3.0, depthMax = 6.0;
  double nodesMin = 6.0, nodesMax = 12.0;
  double fanInMin = 1.2, fanInMax = 1.8;
};

/// Hidden optimum the surrogate trainer rewards, plus per-feature
/// tolerance scales.
struct TargetProfile {
  NetworkFeatures target;
  double depthScale = 2.0;
  double nodeScale = 4.0;
  double histogramScale = 0.5;
  double fanInScale = 0.5;

  /// Draws integer depth and node targets, a random layer mix and a fan-in
  /// from the given ranges.
  static TargetProfile fromSeed(std::uint64_t seed, const ProfileRanges& ranges = {});
};

/// Mean over the four features of 1 / (1 + deviation / scale); deviation is
/// absolute for scalars and L1 for the histogram. Equals 1 at the target.
double profileSimilarity(const NetworkFeatures& f, const TargetProfile& p);

struct SurrogateOptions {
  double noiseSigma = 0.02;
  std::uint64_t runSeed = 0;
};

/// Stand-in for network training: structural similarity to the target
/// profile plus Gaussian noise from a stream keyed by (runSeed, network id),
/// clamped to [0, 1]. Genome size, which drives the delay, is the layer count.
class SurrogateTrainer {
 public:
  using Genome = AssembledNetwork;
  using Fitness = double;

  SurrogateTrainer(TargetProfile profile, SurrogateOptions options)
      : profile_(profile), options_(options) {}
  explicit SurrogateTrainer(SurrogateOptions options)
      : SurrogateTrainer(TargetProfile::fromSeed(options.runSeed), options) {}

  double evaluate(const AssembledNetwork& net) const;
  double noiseFree(const AssembledNetwork& net) const;
  std::size_t genomeSize(const AssembledNetwork& net) const { return net.nodeCount(); }
  double worstFitness() const { return 0.0; }

  const TargetProfile& profile() const { return profile_; }
  const SurrogateOptions& options() const { return options_; }

 private:
  TargetProfile profile_;
  SurrogateOptions options_;
};

}  // namespace aes::cdn
