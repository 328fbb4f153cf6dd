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

// Task-specific judge prompts and the strict placeholder engine behind them.
//
// User templates follow brace-format syntax: `{name}` is a placeholder and
// `{{` / `}}` are literal braces. Substituted values are inserted verbatim and
// never rescanned, so a value containing "{answer}" stays as typed.
//
// QA has two prompt variants (Natural Questions and MultiNativQA), chosen by
// the instance's source dataset; every other task has exactly one.

#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "omniscore/types.hpp"

namespace omniscore::prompts {

enum class TemplateId {
  kNaturalQuestions,
  kMultiNativQA,
  kSummarization,
  kHeadline,
  kParaphrase,
  kTranslation,
  kWildChat,
};

inline constexpr std::array<TemplateId, 7> kAllTemplates = {
    TemplateId::kNaturalQuestions, TemplateId::kMultiNativQA,
    TemplateId::kSummarization,    TemplateId::kHeadline,
    TemplateId::kParaphrase,       TemplateId::kTranslation,
    TemplateId::kWildChat};

struct PromptTemplate {
  TemplateId id;
  TaskKind task;
  std::string name;
  std::string system_text;
  std::string user_text_template;
  // Sorted placeholder names; equal to the set parsed from the template.
  std::vector<std::string> required_placeholders;
  bool confidence_required = true;
  // Placeholder filled from EvaluationInstance::candidate.
  std::string candidate_placeholder;
  // Remaining placeholders -> EvaluationInstance::inputs key.
  std::map<std::string, std::string> input_bindings;
};

const PromptTemplate& get_template(TemplateId id);

// MultiNativQA-sourced QA items use the MultiNativQA variant; all other QA
// items use the Natural Questions one.
TemplateId select_template(TaskKind task, std::string_view source_dataset);
const PromptTemplate& template_for(const EvaluationInstance& instance);

// `inputs` keys an instance must carry so its prompt can be built.
std::vector<std::string> required_input_fields(TaskKind task,
                                               std::string_view source_dataset);

// Distinct placeholder names in order of first appearance. Throws a
// validation Error on a lone brace or a malformed placeholder.
std::vector<std::string> parse_placeholders(std::string_view tmpl);

// Single left-to-right pass. Every placeholder must have a value; unused
// values are an error too, so template and bindings cannot drift apart.
std::string render(std::string_view tmpl,
                   const std::map<std::string, std::string>& values);

struct Prompt {
  std::string system;
  std::string user;
};

Prompt build_prompt(const EvaluationInstance& instance);

}  // namespace omniscore::prompts
