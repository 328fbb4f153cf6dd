// Copyright 2026 The OmniScore Toolkit Authors.
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

// Report rounding and aligned plain-text tables.

#pragma once

#include <string>
#include <vector>

namespace omniscore {

// Half-away-from-zero at the given number of decimals. Values within a
// relative 1e-9 of a decimal tie are treated as the tie, so 4.3875 produced
// by binary arithmetic still rounds to 4.39.
double round_half_away(double value, int decimals);

// round_half_away rendered with exactly `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  // First column left-aligned, the rest right-aligned, two-space gutters.
  std::string render() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace omniscore
