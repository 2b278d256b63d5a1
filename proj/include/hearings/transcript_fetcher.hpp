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

#ifndef HEARINGS_TRANSCRIPT_FETCHER_HPP_
#define HEARINGS_TRANSCRIPT_FETCHER_HPP_

#include <chrono>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include "hearings/errors.hpp"

namespace hearings {

class FetchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FetcherConfig {
  // URL template; every "{id}" is replaced by the hearing id.
  std::string endpoint =
      "https://www.govinfo.gov/content/pkg/{id}/html/{id}.htm";
  std::filesystem::path cache_dir = "transcript_cache";
  std::chrono::milliseconds min_delay{1000};
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::seconds timeout{30};
};

// Network-optional transcript download with an on-disk cache. Requests to
// one fetcher are serialized and spaced by at least min_delay.
class TranscriptFetcher {
 public:
  explicit TranscriptFetcher(FetcherConfig config);

  // Cached text if present, else download, convert to plain text, cache.
  // Throws NotFoundError on 404, FetchError when retries are exhausted,
  // IoError when the cache cannot be written.
  std::string fetch(const std::string& hearing_id);

  std::filesystem::path cache_path(const std::string& hearing_id) const;
  std::size_t network_requests() const { return network_requests_; }

 private:
  std::string url_for(const std::string& hearing_id) const;
  std::string download(const std::string& hearing_id);

  FetcherConfig config_;
  std::mutex mutex_;
  std::optional<std::chrono::steady_clock::time_point> last_request_;
  std::size_t network_requests_ = 0;
};

// Strips tags and decodes the handful of entities GPO pages use.
std::string html_to_text(std::string_view html);

}  // namespace hearings

#endif  // HEARINGS_TRANSCRIPT_FETCHER_HPP_
