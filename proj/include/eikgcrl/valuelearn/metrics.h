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

#ifndef EIKGCRL_VALUELEARN_METRICS_H_
#define EIKGCRL_VALUELEARN_METRICS_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eikgcrl::valuelearn {

// Append-only CSV `step,phase,<columns...>`. Every row is flushed so
// readers can follow a running job.
class MetricsWriter {
 public:
  MetricsWriter(const std::filesystem::path& path,
                std::vector<std::string> columns);
  // Throws InvalidArgument unless there is one value per column.
  void Write(std::int64_t step, std::string_view phase,
             std::span<const double> values);

 private:
  std::ofstream out_;
  std::size_t width_;
};

}  // namespace eikgcrl::valuelearn

#endif  // EIKGCRL_VALUELEARN_METRICS_H_
