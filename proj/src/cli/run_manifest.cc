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

#include "eikgcrl/cli/run_manifest.h"

#include <ctime>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "eikgcrl/errors.h"

namespace eikgcrl::cli {

std::string Sha1Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha1(),
                 nullptr) != 1) {
    throw InvalidArgument("SHA-1 digest failed");
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string FileSha1(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return Sha1Hex(ss.str());
}

std::string RunManifest::InputHash() const {
  const nlohmann::json j = {{"command", command},
                            {"config", config},
                            {"inputs", inputs},
                            {"dataset_csv_sha1", dataset_csv_sha1},
                            {"dataset_manifest_sha1", dataset_manifest_sha1},
                            {"seed", seed}};
  return Sha1Hex(j.dump());
}

nlohmann::json RunManifest::ToJson() const {
  return {{"format", 1},
          {"command", command},
          {"config", config},
          {"inputs", inputs},
          {"dataset",
           {{"dir", dataset_dir.string()},
            {"csv_sha1", dataset_csv_sha1},
            {"manifest_sha1", dataset_manifest_sha1}}},
          {"seed", seed},
          {"input_hash", InputHash()},
          {"timestamps", {{"started", started_at}, {"finished", finished_at}}},
          {"outputs", outputs}};
}

std::string UtcNow() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void PrepareFreshDir(const std::filesystem::path& dir) {
  if (std::filesystem::exists(dir)) {
    if (!std::filesystem::is_directory(dir)) {
      throw InvalidArgument(dir.string() + " exists and is not a directory");
    }
    if (!std::filesystem::is_empty(dir)) {
      throw InvalidArgument("output directory " + dir.string() +
                            " is not empty; outputs are write-once");
    }
  }
  std::filesystem::create_directories(dir);
}

}  // namespace eikgcrl::cli
