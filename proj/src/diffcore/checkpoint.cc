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

#include "eikgcrl/diffcore/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "eikgcrl/errors.h"

namespace eikgcrl::diffcore {
namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

void PutU32(std::string& out, std::uint32_t v) {
  char buf[4];
  std::memcpy(buf, &v, 4);
  out.append(buf, 4);
}

void PutF64(std::string& out, double v) {
  char buf[8];
  std::memcpy(buf, &v, 8);
  out.append(buf, 8);
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  bool AtEnd() const { return pos_ == bytes_.size(); }

  void Need(std::size_t n, const char* what) const {
    if (bytes_.size() - pos_ < n) {
      throw CorruptArtifact(std::string("checkpoint truncated while reading ") +
                            what);
    }
  }

  std::uint32_t U32(const char* what) {
    Need(4, what);
    std::uint32_t v;
    std::memcpy(&v, bytes_.data() + pos_, 4);
    pos_ += 4;
    return v;
  }

  double F64(const char* what) {
    Need(8, what);
    double v;
    std::memcpy(&v, bytes_.data() + pos_, 8);
    pos_ += 8;
    return v;
  }

  std::string Bytes(std::size_t n, const char* what) {
    Need(n, what);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string SerializeCheckpoint(const ParameterSet& params) {
  std::string out(kCheckpointMagic, sizeof(kCheckpointMagic));
  out.push_back(static_cast<char>(kCheckpointVersion));
  for (const ParamEntry& e : params.entries()) {
    PutU32(out, static_cast<std::uint32_t>(e.name.size()));
    out += e.name;
    PutU32(out, static_cast<std::uint32_t>(e.shape.size()));
    for (std::uint32_t d : e.shape) PutU32(out, d);
    for (Eigen::Index r = 0; r < e.values.rows(); ++r) {
      for (Eigen::Index c = 0; c < e.values.cols(); ++c) {
        PutF64(out, e.values(r, c));
      }
    }
  }
  return out;
}

ParameterSet DeserializeCheckpoint(const std::string& bytes) {
  Reader in(bytes);
  if (in.Bytes(sizeof(kCheckpointMagic), "magic") !=
      std::string(kCheckpointMagic, sizeof(kCheckpointMagic))) {
    throw CorruptArtifact("checkpoint magic mismatch");
  }
  const auto version = static_cast<std::uint8_t>(in.Bytes(1, "version")[0]);
  if (version != kCheckpointVersion) {
    throw CorruptArtifact("unsupported checkpoint version " +
                          std::to_string(version));
  }
  ParameterSet params;
  while (!in.AtEnd()) {
    const std::uint32_t name_len = in.U32("name length");
    std::string name = in.Bytes(name_len, "name");
    const std::uint32_t rank = in.U32("rank");
    if (rank < 1 || rank > 2) {
      throw CorruptArtifact("unsupported rank " + std::to_string(rank) +
                            " for '" + name + "'");
    }
    std::vector<std::uint32_t> shape;
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < rank; ++i) {
      shape.push_back(in.U32("dims"));
      count *= shape.back();
    }
    in.Need(count * 8, "values");
    const Eigen::Index rows = rank == 1 ? 1 : shape[0];
    const Eigen::Index cols = rank == 1 ? shape[0] : shape[1];
    Matrix values(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) values(r, c) = in.F64("values");
    }
    try {
      params.Add(std::move(name), std::move(shape), std::move(values));
    } catch (const InvalidArgument& e) {
      throw CorruptArtifact(e.what());
    }
  }
  return params;
}

void WriteCheckpoint(const std::filesystem::path& path,
                     const ParameterSet& params) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot open " + path.string());
  const std::string bytes = SerializeCheckpoint(params);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InvalidArgument("failed writing " + path.string());
}

ParameterSet ReadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open checkpoint " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return DeserializeCheckpoint(bytes);
}

}  // namespace eikgcrl::diffcore
