// Copyright 2026 The EikGCRL Authors
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

#ifndef EIKGCRL_CLI_RUN_MANIFEST_H_
#define EIKGCRL_CLI_RUN_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace eikgcrl::cli {

// Lowercase hex SHA-1.
std::string Sha1Hex(std::string_view bytes);
// Throws InvalidArgument if the file cannot be read.
std::string FileSha1(const std::filesystem::path& path);

// One per training run. `input_hash` covers everything that determines the
// outputs (command, config, algorithm, steps, dataset content, seed); the
// timestamps do not enter it.
struct RunManifest {
  std::string command;
  nlohmann::json config;
  nlohmann::json inputs;  // command-specific arguments
  std::filesystem::path dataset_dir;
  std::string dataset_csv_sha1;
  std::string dataset_manifest_sha1;
  std::uint64_t seed = 0;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;

  std::string InputHash() const;
  nlohmann::json ToJson() const;
};

// UTC time as ISO-8601 with seconds.
std::string UtcNow();

// Creates `dir` and refuses (InvalidArgument) if it already has entries.
void PrepareFreshDir(const std::filesystem::path& dir);

}  // namespace eikgcrl::cli

#endif  // EIKGCRL_CLI_RUN_MANIFEST_H_
