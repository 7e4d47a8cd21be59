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

#include "eikgcrl/diffcore/parameter_set.h"

#include <algorithm>
#include <cstring>
#include <utility>

#include "eikgcrl/errors.h"

namespace eikgcrl::diffcore {

void ParameterSet::Add(std::string name, std::vector<std::uint32_t> shape,
                       Matrix values) {
  if (name.empty()) throw InvalidArgument("parameter name must not be empty");
  if (Contains(name)) {
    throw InvalidArgument("duplicate parameter name: " + name);
  }
  if (shape.empty() || shape.size() > 2) {
    throw InvalidArgument("parameter rank must be 1 or 2: " + name);
  }
  const Eigen::Index rows = shape.size() == 1 ? 1 : shape[0];
  const Eigen::Index cols = shape.size() == 1 ? shape[0] : shape[1];
  if (values.rows() != rows || values.cols() != cols) {
    throw InvalidArgument("parameter values do not match shape: " + name);
  }
  entries_.push_back({std::move(name), std::move(shape), std::move(values)});
}

std::size_t ParameterSet::IndexOf(std::string_view name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name == name) return i;
  }
  throw InvalidArgument("no parameter named " + std::string(name));
}

bool ParameterSet::Contains(std::string_view name) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const ParamEntry& e) { return e.name == name; });
}

ParameterSet ParameterSet::ZerosLike() const {
  ParameterSet out;
  for (const auto& e : entries_) {
    out.entries_.push_back(
        {e.name, e.shape, Matrix::Zero(e.values.rows(), e.values.cols())});
  }
  return out;
}

bool ParameterSet::SameLayout(const ParameterSet& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name != other.entries_[i].name ||
        entries_[i].shape != other.entries_[i].shape) {
      return false;
    }
  }
  return true;
}

bool ParameterSet::AllFinite() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const ParamEntry& e) {
    return e.values.allFinite();
  });
}

std::size_t ParameterSet::NumScalars() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.values.size();
  return n;
}

ParameterSet ParameterSet::WithPrefixStripped(std::string_view prefix) const {
  ParameterSet out;
  for (const auto& e : entries_) {
    if (e.name.size() > prefix.size() &&
        std::string_view(e.name).substr(0, prefix.size()) == prefix) {
      out.Add(e.name.substr(prefix.size()), e.shape, e.values);
    }
  }
  return out;
}

void ParameterSet::Merge(const ParameterSet& other, std::string_view prefix) {
  for (const auto& e : other.entries_) {
    Add(std::string(prefix) + e.name, e.shape, e.values);
  }
}

bool operator==(const ParameterSet& a, const ParameterSet& b) {
  if (!a.SameLayout(b)) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    const Matrix& x = a.entries_[i].values;
    const Matrix& y = b.entries_[i].values;
    // Bitwise comparison so that -0.0 vs 0.0 and NaN payloads count.
    if (std::memcmp(x.data(), y.data(), sizeof(double) * x.size()) != 0) {
      return false;
    }
  }
  return true;
}

double MaxAbsDifference(const ParameterSet& a, const ParameterSet& b) {
  if (!a.SameLayout(b)) throw InvalidArgument("parameter layouts differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, (a.values(i) - b.values(i)).cwiseAbs().maxCoeff());
  }
  return m;
}

}  // namespace eikgcrl::diffcore
