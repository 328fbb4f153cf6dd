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

// Pluggable judge endpoint and the retrying batch annotator.
//
// Endpoint contract: POST a JSON body
//   {"system": "...", "user": "...", "decoding": {"temperature": 0}}
// and read the raw response body as the judge's text output.

#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "omniscore/types.hpp"
#include "omniscore/verdict.hpp"

namespace omniscore::judge {

struct JudgeRequest {
  std::string system;
  std::string user;
  double temperature = 0.0;
};

Json request_json(const JudgeRequest& request);

// The endpoint could not be reached or answered with a non-success status.
class TransportError : public Error {
 public:
  explicit TransportError(const std::string& what)
      : Error(ErrorKind::kJudge, what) {}
};

class JudgeClient {
 public:
  virtual ~JudgeClient() = default;
  // Must be safe to call concurrently. Throws TransportError.
  virtual std::string complete(const JudgeRequest& request) = 0;
};

class HttpJudgeClient : public JudgeClient {
 public:
  // `url` is scheme://host[:port][/path]. Proxy settings are read from
  // HTTP_PROXY / HTTPS_PROXY (or lowercase) for this client only.
  explicit HttpJudgeClient(std::string url,
                           std::chrono::milliseconds timeout =
                               std::chrono::seconds(120));
  std::string complete(const JudgeRequest& request) override;

 private:
  std::string scheme_host_port_;
  std::string path_;
  std::chrono::milliseconds timeout_;
};

// Adapts a callable; handy for tests and in-process judges.
class FunctionJudgeClient : public JudgeClient {
 public:
  using Fn = std::function<std::string(const JudgeRequest&)>;
  explicit FunctionJudgeClient(Fn fn) : fn_(std::move(fn)) {}
  std::string complete(const JudgeRequest& request) override {
    return fn_(request);
  }

 private:
  Fn fn_;
};

struct RetryPolicy {
  int max_attempts = 3;
  // Delay before attempt k+1 is backoff[min(k-1, size-1)]; empty means none.
  std::vector<std::chrono::milliseconds> backoff{};
  int parallelism = 1;
  bool repair_fences = false;
};

inline constexpr std::string_view kEndpointUnreachable = "endpoint_unreachable";

struct Outcome {
  std::string id;
  int attempts = 0;
  std::optional<verdict::JudgeVerdict> verdict;
  // Set on failure: a verdict reason code or kEndpointUnreachable.
  std::string failure_reason;
  std::string failure_detail;

  bool ok() const { return verdict.has_value(); }
  bool transport_failure() const {
    return !ok() && failure_reason == kEndpointUnreachable;
  }
};

// One outcome per instance, in input order. A failed parse or transport
// error triggers a fresh request until max_attempts is reached; failures are
// recorded per instance and never abort the batch.
std::vector<Outcome> annotate_batch(std::span<const EvaluationInstance> instances,
                                    JudgeClient& client,
                                    const RetryPolicy& policy);

// Verdict store: one JSON object per line keyed by instance id.
std::string verdicts_to_jsonl(std::span<const Outcome> outcomes);
std::vector<Outcome> read_verdicts(const std::filesystem::path& path);

}  // namespace omniscore::judge
