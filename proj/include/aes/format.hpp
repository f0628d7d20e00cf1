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

#include <string>
#include <string_view>
#include <vector>

namespace aes {

/// Shortest round-trip decimal form, '.' separator, locale independent.
std::string formatDouble(double value);

/// Fixed-point with `digits` decimals, locale independent.
std::string formatFixed(double value, int digits);

/// Splits on commas; no quoting (none of our fields contain commas).
std::vector<std::string_view> splitCsvLine(std::string_view line);

double parseDouble(std::string_view text);

}  // namespace aes
