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

#include "aes/delay_model.hpp"

#include <algorithm>
#include <sstream>

#include "aes/errors.hpp"

namespace aes {

namespace {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;
}  // namespace

void validate(const DelayModel& model) {
  std::visit(Overloaded{
                 [](const ConstantDelay& m) {
                   if (!(m.t > 0.0)) throw ConfigError("constant delay must be positive");
                 },
                 [](const LinearInSizeDelay& m) {
                   if (!(m.tUnit > 0.0)) throw ConfigError("tUnit must be positive");
                 },
                 [](const GenerationGaussianDelay& m) {
                   if (!(m.floor > 0.0)) throw ConfigError("gaussian delay floor must be positive");
                 },
             },
             model);
}

double gaussianDelay(const GenerationGaussianDelay& model, std::size_t generation, double z) {
  const double g = static_cast<double>(generation);
  const double mean = model.meanIntercept + model.meanSlope * g;
  const double sd = std::max(0.0, model.stdIntercept + model.stdSlope * g);
  return std::max(model.floor, mean + sd * z);
}

double sampleDelay(const DelayModel& model, std::size_t genomeSize, std::size_t generation,
                   Rng& rng) {
  validate(model);
  return std::visit(Overloaded{
                        [](const ConstantDelay& m) { return m.t; },
                        [&](const LinearInSizeDelay& m) {
                          // An empty genome still occupies its worker for one unit.
                          return static_cast<double>(std::max<std::size_t>(genomeSize, 1)) *
                                 m.tUnit;
                        },
                        [&](const GenerationGaussianDelay& m) {
                          return gaussianDelay(m, generation, rng.normal());
                        },
                    },
                    model);
}

std::string describe(const DelayModel& model) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const ConstantDelay& m) { os << "constant(t=" << m.t << ")"; },
                 [&](const LinearInSizeDelay& m) { os << "linear(tUnit=" << m.tUnit << ")"; },
                 [&](const GenerationGaussianDelay& m) {
                   os << "gaussian(mean=" << m.meanIntercept << "+" << m.meanSlope
                      << "g, sd=" << m.stdIntercept << "+" << m.stdSlope << "g, floor=" << m.floor
                      << ")";
                 },
             },
             model);
  return os.str();
}

}  // namespace aes
