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

#include "omniscore/judge.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "omniscore/prompts.hpp"

namespace omniscore::judge {

namespace {

struct ParsedUrl {
  std::string scheme;
  std::string host;
  int port = 0;
  std::string path;
};

ParsedUrl parse_url(const std::string& url) {
  ParsedUrl u;
  const auto sep = url.find("://");
  if (sep == std::string::npos) {
    throw ValidationError("judge endpoint must be scheme://host[:port][/path]: " + url);
  }
  u.scheme = url.substr(0, sep);
  if (u.scheme != "http" && u.scheme != "https") {
    throw ValidationError("unsupported judge endpoint scheme: " + u.scheme);
  }
  std::string rest = url.substr(sep + 3);
  const auto slash = rest.find('/');
  u.path = slash == std::string::npos ? "/" : rest.substr(slash);
  std::string authority = rest.substr(0, slash);
  const auto colon = authority.rfind(':');
  if (colon != std::string::npos && authority.find(']') == std::string::npos) {
    u.host = authority.substr(0, colon);
    u.port = std::stoi(authority.substr(colon + 1));
  } else {
    u.host = authority;
    u.port = u.scheme == "https" ? 443 : 80;
  }
  if (u.host.empty()) throw ValidationError("judge endpoint has no host: " + url);
  return u;
}

const char* env_either(const char* upper, const char* lower) {
  if (const char* v = std::getenv(upper); v && *v) return v;
  if (const char* v = std::getenv(lower); v && *v) return v;
  return nullptr;
}

bool proxy_bypassed(const std::string& host) {
  if (host == "localhost" || host == "127.0.0.1" || host == "::1") return true;
  const char* no_proxy = env_either("NO_PROXY", "no_proxy");
  if (!no_proxy) return false;
  std::string list = no_proxy;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = list.find(',', start);
    std::string entry = list.substr(start, comma - start);
    while (!entry.empty() && entry.front() == ' ') entry.erase(0, 1);
    while (!entry.empty() && entry.back() == ' ') entry.pop_back();
    if (entry == "*") return true;
    if (!entry.empty() && entry.front() == '.') entry.erase(0, 1);
    if (!entry.empty() &&
        (host == entry ||
         (host.size() > entry.size() &&
          host.compare(host.size() - entry.size(), entry.size(), entry) == 0 &&
          host[host.size() - entry.size() - 1] == '.'))) {
      return true;
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return false;
}

}  // namespace

Json request_json(const JudgeRequest& request) {
  Json j;
  j["system"] = request.system;
  j["user"] = request.user;
  j["decoding"] = {{"temperature", request.temperature}};
  return j;
}

HttpJudgeClient::HttpJudgeClient(std::string url,
                                 std::chrono::milliseconds timeout)
    : timeout_(timeout) {
  const ParsedUrl u = parse_url(url);
  scheme_host_port_ = u.scheme + "://" + u.host + ":" + std::to_string(u.port);
  path_ = u.path;
}

std::string HttpJudgeClient::complete(const JudgeRequest& request) {
  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);

  const ParsedUrl self = parse_url(scheme_host_port_);
  if (!proxy_bypassed(self.host)) {
    const char* proxy = self.scheme == "https"
                            ? env_either("HTTPS_PROXY", "https_proxy")
                            : env_either("HTTP_PROXY", "http_proxy");
    if (proxy) {
      std::string p = proxy;
      if (p.find("://") == std::string::npos) p = "http://" + p;
      const ParsedUrl pu = parse_url(p);
      client.set_proxy(pu.host, pu.port);
    }
  }

  const auto res =
      client.Post(path_, request_json(request).dump(), "application/json");
  if (!res) {
    throw TransportError("judge endpoint " + scheme_host_port_ + ": " +
                         httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw TransportError("judge endpoint " + scheme_host_port_ +
                         " returned HTTP " + std::to_string(res->status));
  }
  return res->body;
}

namespace {

Outcome annotate_one(const EvaluationInstance& inst, JudgeClient& client,
                     const RetryPolicy& policy) {
  Outcome out;
  out.id = inst.id;
  const prompts::PromptTemplate& tmpl = prompts::template_for(inst);
  const prompts::Prompt prompt = prompts::build_prompt(inst);
  const JudgeRequest request{prompt.system, prompt.user, 0.0};
  const int max_attempts = std::max(1, policy.max_attempts);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    if (attempt > 1 && !policy.backoff.empty()) {
      const std::size_t k = std::min<std::size_t>(attempt - 2, policy.backoff.size() - 1);
      std::this_thread::sleep_for(policy.backoff[k]);
    }
    out.attempts = attempt;
    std::string raw;
    try {
      raw = client.complete(request);
    } catch (const TransportError& e) {
      out.failure_reason = std::string(kEndpointUnreachable);
      out.failure_detail = e.what();
      continue;
    }
    verdict::ParseResult parsed = verdict::parse_verdict(
        raw, inst.candidate, tmpl, {policy.repair_fences});
    if (parsed.ok()) {
      out.verdict = parsed.verdict();
      out.failure_reason.clear();
      out.failure_detail.clear();
      return out;
    }
    out.failure_reason = std::string(verdict::to_string(parsed.rejection().code));
    out.failure_detail = parsed.rejection().detail;
  }
  return out;
}

}  // namespace

std::vector<Outcome> annotate_batch(std::span<const EvaluationInstance> instances,
                                    JudgeClient& client,
                                    const RetryPolicy& policy) {
  std::vector<Outcome> results(instances.size());
  const std::size_t workers = std::min<std::size_t>(
      std::max(1, policy.parallelism), std::max<std::size_t>(1, instances.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      results[i] = annotate_one(instances[i], client, policy);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return results;
}

std::string verdicts_to_jsonl(std::span<const Outcome> outcomes) {
  std::string out;
  for (const auto& o : outcomes) {
    Json j;
    j["id"] = o.id;
    j["status"] = o.ok() ? "ok" : "failed";
    j["attempts"] = o.attempts;
    if (o.ok()) {
      j["verdict"] = verdict::to_json(*o.verdict);
    } else {
      j["reason"] = o.failure_reason;
      j["detail"] = o.failure_detail;
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<Outcome> read_verdicts(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open verdict file " + path.string());
  std::vector<Outcome> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    try {
      const Json j = Json::parse(line);
      Outcome o;
      o.id = j.at("id").get<std::string>();
      o.attempts = j.at("attempts").get<int>();
      if (j.at("status").get<std::string>() == "ok") {
        o.verdict = verdict::from_stored_json(j.at("verdict"));
      } else {
        o.failure_reason = j.at("reason").get<std::string>();
        o.failure_detail = j.value("detail", "");
      }
      out.push_back(std::move(o));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(path.string() + ": line " + std::to_string(line_no) +
                            ": " + e.what());
    }
  }
  return out;
}

}  // namespace omniscore::judge
