// Copyright 2026 The Hearings Authors.
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

#include "hearings/transcript_fetcher.hpp"

#include <thread>

#include "httplib.h"
#include "hearings/text_util.hpp"

namespace hearings {

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw FetchError("not an absolute URL: " + url);
  const std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

std::string html_to_text(std::string_view html) {
  std::string out;
  out.reserve(html.size());
  bool in_tag = false;
  for (std::size_t i = 0; i < html.size(); ++i) {
    const char c = html[i];
    if (in_tag) {
      if (c == '>') in_tag = false;
      continue;
    }
    if (c == '<') {
      in_tag = true;
      continue;
    }
    if (c == '&') {
      static const std::pair<std::string_view, char> entities[] = {
          {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'},
          {"&quot;", '"'}, {"&#39;", '\''}, {"&apos;", '\''}, {"&nbsp;", ' '}};
      bool matched = false;
      for (const auto& [name, ch] : entities) {
        if (html.substr(i, name.size()) == name) {
          out.push_back(ch);
          i += name.size() - 1;
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    out.push_back(c);
  }
  return out;
}

TranscriptFetcher::TranscriptFetcher(FetcherConfig config) : config_(std::move(config)) {
  if (config_.max_attempts < 1) config_.max_attempts = 1;
}

std::filesystem::path TranscriptFetcher::cache_path(const std::string& hearing_id) const {
  return config_.cache_dir / (hearing_id + ".txt");
}

std::string TranscriptFetcher::url_for(const std::string& hearing_id) const {
  std::string url = config_.endpoint;
  std::size_t pos = 0;
  while ((pos = url.find("{id}", pos)) != std::string::npos) {
    url.replace(pos, 4, hearing_id);
    pos += hearing_id.size();
  }
  return url;
}

std::string TranscriptFetcher::fetch(const std::string& hearing_id) {
  if (hearing_id.empty() || hearing_id.find('/') != std::string::npos) {
    throw ValidationError("invalid hearing id '" + hearing_id + "'");
  }
  const auto path = cache_path(hearing_id);
  if (std::filesystem::exists(path)) return read_file(path);
  std::string text = download(hearing_id);
  try {
    write_file(path, text);
  } catch (const IoError& e) {
    throw IoError(std::string("cache write failed: ") + e.what());
  }
  return text;
}

std::string TranscriptFetcher::download(const std::string& hearing_id) {
  std::lock_guard<std::mutex> lock(mutex_);
  const std::string url = url_for(hearing_id);
  const SplitUrl parts = split_url(url);
  httplib::Client client(parts.origin);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_follow_location(true);

  auto backoff = config_.initial_backoff;
  std::string last_error;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    if (last_request_) {
      const auto ready = *last_request_ + config_.min_delay;
      std::this_thread::sleep_until(ready);
    }
    last_request_ = std::chrono::steady_clock::now();
    ++network_requests_;
    auto res = client.Get(parts.path);
    if (res) {
      if (res->status == 200) {
        const std::string ctype = res->get_header_value("Content-Type");
        const bool html = ctype.find("html") != std::string::npos ||
                          trim(res->body).substr(0, 1) == "<";
        return html ? html_to_text(res->body) : res->body;
      }
      if (res->status == 404) {
        throw NotFoundError(hearing_id, "transcript not found: " + hearing_id);
      }
      last_error = "HTTP " + std::to_string(res->status);
      if (res->status < 500 && res->status != 429) {
        throw FetchError("fetch of " + hearing_id + " failed: " + last_error);
      }
    } else {
      last_error = httplib::to_string(res.error());
    }
    if (attempt < config_.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  throw FetchError("fetch of " + hearing_id + " failed after " +
                   std::to_string(config_.max_attempts) + " attempts: " + last_error);
}

}  // namespace hearings
