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

// Planted-signal corpora: synthetic instances whose gold scores are a known
// function of the candidate text plus bounded rater noise. Used to check that
// the regressor can learn and for end-to-end pipeline fixtures.
//
// The latent quality of dimension d is 1 + (number of times the positive
// marker word for d occurs in the candidate). Each candidate carries exactly
// four markers (positive or negative) per dimension, so the latent score is
// always in 1..5. Two simulated raters report the latent score and the latent
// score shifted by -1, 0 or +1 (clamped); gold is their mean, so
// |gold - latent| <= 0.5.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "omniscore/types.hpp"

namespace omniscore::synthetic {

inline constexpr std::size_t kMarkersPerDimension = 4;

struct MarkerSet {
  std::string_view positive;
  std::string_view negative;
};

const std::array<MarkerSet, kNumDimensions>& marker_sets();

// The planted oracle: latent quality from the candidate's words.
std::array<int, kNumDimensions> latent_quality(std::string_view candidate);

struct PlantedConfig {
  std::size_t size = 5000;
  std::uint64_t seed = 7;
  double train_fraction = 0.8;
  double dev_fraction = 0.1;
  // Filler words mixed into the candidate, drawn uniformly in [min, max].
  std::size_t filler_min = 4;
  std::size_t filler_max = 10;
};

// Deterministic in `cfg`. Instances carry gold and two raw ratings, cycle
// through the six tasks and several languages, and are assigned to splits
// deterministically.
std::vector<EvaluationInstance> planted_corpus(const PlantedConfig& cfg);

std::vector<EvaluationInstance> select_split(
    std::span<const EvaluationInstance> instances, Split split);

}  // namespace omniscore::synthetic
