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

#pragma once

namespace omniscore::prompts::text {

extern const char* const kNaturalQuestionsSystem;
extern const char* const kNaturalQuestionsUser;
extern const char* const kMultiNativQASystem;
extern const char* const kMultiNativQAUser;
extern const char* const kSummarizationSystem;
extern const char* const kSummarizationUser;
extern const char* const kHeadlineSystem;
extern const char* const kHeadlineUser;
extern const char* const kParaphraseSystem;
extern const char* const kParaphraseUser;
extern const char* const kTranslationSystem;
extern const char* const kTranslationUser;
extern const char* const kWildChatSystem;
extern const char* const kWildChatUser;

}  // namespace omniscore::prompts::text
