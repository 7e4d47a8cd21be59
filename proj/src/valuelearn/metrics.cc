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

#include "eikgcrl/valuelearn/metrics.h"

#include "eikgcrl/errors.h"
#include "eikgcrl/mazeworld/dataset.h"

namespace eikgcrl::valuelearn {

MetricsWriter::MetricsWriter(const std::filesystem::path& path,
                             std::vector<std::string> columns)
    : out_(path, std::ios::trunc), width_(columns.size()) {
  if (!out_) throw InvalidArgument("cannot write metrics to " + path.string());
  out_ << "step,phase";
  for (const std::string& c : columns) out_ << ',' << c;
  out_ << '\n' << std::flush;
}

void MetricsWriter::Write(std::int64_t step, std::string_view phase,
                          std::span<const double> values) {
  if (values.size() != width_) {
    throw InvalidArgument("metrics row has the wrong number of values");
  }
  out_ << step << ',' << phase;
  for (double v : values) out_ << ',' << mazeworld::FormatDouble(v);
  out_ << '\n' << std::flush;
}

}  // namespace eikgcrl::valuelearn
