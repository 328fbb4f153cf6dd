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

#include "omniscore/prompts.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "prompt_text.hpp"

namespace omniscore::prompts {

namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Token stream over a template: literal text and placeholder names.
template <typename OnLiteral, typename OnPlaceholder>
void scan(std::string_view tmpl, OnLiteral on_literal,
          OnPlaceholder on_placeholder) {
  std::size_t i = 0;
  std::size_t literal_start = 0;
  auto flush = [&](std::size_t end) {
    if (end > literal_start) {
      on_literal(tmpl.substr(literal_start, end - literal_start));
    }
  };
  while (i < tmpl.size()) {
    const char c = tmpl[i];
    if (c == '{') {
      if (i + 1 < tmpl.size() && tmpl[i + 1] == '{') {
        flush(i);
        on_literal("{");
        i += 2;
        literal_start = i;
        continue;
      }
      const std::size_t close = tmpl.find('}', i + 1);
      if (close == std::string_view::npos) {
        throw ValidationError("template: unterminated '{' at offset " +
                              std::to_string(i));
      }
      const std::string_view name = tmpl.substr(i + 1, close - i - 1);
      if (name.empty() || !is_name_start(name[0]) ||
          !std::all_of(name.begin(), name.end(), is_name_char)) {
        throw ValidationError("template: malformed placeholder at offset " +
                              std::to_string(i));
      }
      flush(i);
      on_placeholder(name);
      i = close + 1;
      literal_start = i;
    } else if (c == '}') {
      if (i + 1 < tmpl.size() && tmpl[i + 1] == '}') {
        flush(i);
        on_literal("}");
        i += 2;
        literal_start = i;
        continue;
      }
      throw ValidationError("template: lone '}' at offset " +
                            std::to_string(i));
    } else {
      ++i;
    }
  }
  flush(tmpl.size());
}

PromptTemplate make(TemplateId id, TaskKind task, std::string name,
                    const char* system, const char* user,
                    bool confidence_required, std::string candidate_placeholder,
                    std::map<std::string, std::string> input_bindings) {
  PromptTemplate t;
  t.id = id;
  t.task = task;
  t.name = std::move(name);
  t.system_text = system;
  t.user_text_template = user;
  auto names = parse_placeholders(t.user_text_template);
  std::sort(names.begin(), names.end());
  t.required_placeholders = std::move(names);
  t.confidence_required = confidence_required;
  t.candidate_placeholder = std::move(candidate_placeholder);
  t.input_bindings = std::move(input_bindings);
  return t;
}

std::vector<PromptTemplate> build_registry() {
  using namespace text;
  std::vector<PromptTemplate> r;
  r.push_back(make(TemplateId::kNaturalQuestions, TaskKind::kQA,
                   "natural_questions", kNaturalQuestionsSystem,
                   kNaturalQuestionsUser, true, "answer",
                   {{"query", "question"}}));
  r.push_back(make(TemplateId::kMultiNativQA, TaskKind::kQA, "multinativqa",
                   kMultiNativQASystem, kMultiNativQAUser, true, "answer",
                   {{"question", "question"}}));
  r.push_back(make(TemplateId::kSummarization, TaskKind::kSummarization,
                   "summarization", kSummarizationSystem, kSummarizationUser,
                   false, "candidate_summary",
                   {{"title", "title"}, {"source_text", "source_text"}}));
  r.push_back(make(TemplateId::kHeadline, TaskKind::kHeadline, "headline",
                   kHeadlineSystem, kHeadlineUser, true, "candidate_headline",
                   {{"text", "article_text"}}));
  r.push_back(make(TemplateId::kParaphrase, TaskKind::kParaphrase,
                   "paraphrase", kParaphraseSystem, kParaphraseUser, true,
                   "candidate_paraphrase", {{"source", "source_text"}}));
  r.push_back(make(TemplateId::kTranslation, TaskKind::kMT, "translation",
                   kTranslationSystem, kTranslationUser, true, "tar_text",
                   {{"src_lang", "src_lang"},
                    {"tar_lang", "tar_lang"},
                    {"src_text", "source_text"}}));
  r.push_back(make(TemplateId::kWildChat, TaskKind::kChat, "wildchat",
                   kWildChatSystem, kWildChatUser, true, "assistant_response",
                   {{"user_message", "user_message"}}));
  // Bindings plus the candidate slot must cover the template exactly.
  for (const auto& t : r) {
    std::set<std::string> bound;
    for (const auto& [ph, field] : t.input_bindings) bound.insert(ph);
    bound.insert(t.candidate_placeholder);
    const std::set<std::string> required(t.required_placeholders.begin(),
                                         t.required_placeholders.end());
    if (bound != required) {
      throw std::logic_error("prompt registry: bindings do not match " +
                             t.name);
    }
  }
  return r;
}

const std::vector<PromptTemplate>& registry() {
  static const std::vector<PromptTemplate> kRegistry = build_registry();
  return kRegistry;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::vector<std::string> parse_placeholders(std::string_view tmpl) {
  std::vector<std::string> names;
  scan(
      tmpl, [](std::string_view) {},
      [&](std::string_view name) {
        if (std::find(names.begin(), names.end(), name) == names.end()) {
          names.emplace_back(name);
        }
      });
  return names;
}

std::string render(std::string_view tmpl,
                   const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::set<std::string_view> used;
  scan(
      tmpl, [&](std::string_view lit) { out.append(lit); },
      [&](std::string_view name) {
        const auto it = values.find(std::string(name));
        if (it == values.end()) {
          throw ValidationError("missing placeholder value: " +
                                std::string(name));
        }
        used.insert(it->first);
        out.append(it->second);
      });
  for (const auto& [name, value] : values) {
    if (!used.count(name)) {
      throw ValidationError("value for unknown placeholder: " + name);
    }
  }
  return out;
}

const PromptTemplate& get_template(TemplateId id) {
  return registry().at(static_cast<std::size_t>(id));
}

TemplateId select_template(TaskKind task, std::string_view source_dataset) {
  switch (task) {
    case TaskKind::kQA:
      return iequals(source_dataset, "MultiNativQA")
                 ? TemplateId::kMultiNativQA
                 : TemplateId::kNaturalQuestions;
    case TaskKind::kMT: return TemplateId::kTranslation;
    case TaskKind::kSummarization: return TemplateId::kSummarization;
    case TaskKind::kHeadline: return TemplateId::kHeadline;
    case TaskKind::kParaphrase: return TemplateId::kParaphrase;
    case TaskKind::kChat: return TemplateId::kWildChat;
  }
  throw std::logic_error("select_template: unknown task");
}

const PromptTemplate& template_for(const EvaluationInstance& instance) {
  return get_template(select_template(instance.task, instance.source_dataset));
}

std::vector<std::string> required_input_fields(
    TaskKind task, std::string_view source_dataset) {
  const auto& t = get_template(select_template(task, source_dataset));
  std::vector<std::string> fields;
  for (const auto& [ph, field] : t.input_bindings) fields.push_back(field);
  std::sort(fields.begin(), fields.end());
  return fields;
}

Prompt build_prompt(const EvaluationInstance& instance) {
  if (instance.candidate.empty()) {
    throw ValidationError("build_prompt: empty candidate for " + instance.id);
  }
  const PromptTemplate& t = template_for(instance);
  std::map<std::string, std::string> values;
  for (const auto& [ph, field] : t.input_bindings) {
    const auto it = instance.inputs.find(field);
    if (it == instance.inputs.end()) {
      throw ValidationError("build_prompt: instance " + instance.id +
                            " is missing input field \"" + field + "\"");
    }
    values.emplace(ph, it->second);
  }
  values.emplace(t.candidate_placeholder, instance.candidate);
  return {t.system_text, render(t.user_text_template, values)};
}

}  // namespace omniscore::prompts
