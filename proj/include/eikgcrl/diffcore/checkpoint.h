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

#ifndef EIKGCRL_DIFFCORE_CHECKPOINT_H_
#define EIKGCRL_DIFFCORE_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "eikgcrl/diffcore/parameter_set.h"

namespace eikgcrl::diffcore {

// Binary layout:
//   "EIKGCRL1" (8 bytes), format version (1 byte), then per entry:
//   name length u32 | UTF-8 name | rank u32 | dims u32 x rank |
//   values f64 x prod(dims), row-major.
// All integers and floats little-endian. Entries run to end of file.
inline constexpr char kCheckpointMagic[8] = {'E', 'I', 'K', 'G',
                                             'C', 'R', 'L', '1'};
inline constexpr std::uint8_t kCheckpointVersion = 1;

std::string SerializeCheckpoint(const ParameterSet& params);
// Throws CorruptArtifact on bad magic, unknown version or truncation.
ParameterSet DeserializeCheckpoint(const std::string& bytes);

void WriteCheckpoint(const std::filesystem::path& path,
                     const ParameterSet& params);
ParameterSet ReadCheckpoint(const std::filesystem::path& path);

}  // namespace eikgcrl::diffcore

#endif  // EIKGCRL_DIFFCORE_CHECKPOINT_H_
