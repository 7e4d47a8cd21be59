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

#ifndef EIKGCRL_DIFFCORE_PARAMETER_SET_H_
#define EIKGCRL_DIFFCORE_PARAMETER_SET_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace eikgcrl::diffcore {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Named, shaped real array. Rank is 1 or 2; a rank-1 entry of length n is
// stored as a 1 x n matrix.
struct ParamEntry {
  std::string name;
  std::vector<std::uint32_t> shape;
  Matrix values;
};

// Ordered collection of parameter arrays with unique names. Shapes are fixed
// at insertion; only values may change afterwards.
class ParameterSet {
 public:
  ParameterSet() = default;

  // Throws InvalidArgument on duplicate names or shape/value mismatch.
  void Add(std::string name, std::vector<std::uint32_t> shape, Matrix values);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const ParamEntry& entry(std::size_t i) const { return entries_[i]; }
  const Matrix& values(std::size_t i) const { return entries_[i].values; }
  Matrix& mutable_values(std::size_t i) { return entries_[i].values; }

  // Index of `name`, or throws InvalidArgument.
  std::size_t IndexOf(std::string_view name) const;
  bool Contains(std::string_view name) const;
  const Matrix& values(std::string_view name) const {
    return entries_[IndexOf(name)].values;
  }

  const std::vector<ParamEntry>& entries() const { return entries_; }

  // Same names and shapes, all values zero.
  ParameterSet ZerosLike() const;
  bool SameLayout(const ParameterSet& other) const;
  bool AllFinite() const;
  std::size_t NumScalars() const;

  // Copies entries whose names start with `prefix`, stripping it.
  ParameterSet WithPrefixStripped(std::string_view prefix) const;
  // Appends all entries of `other` with `prefix` prepended to their names.
  void Merge(const ParameterSet& other, std::string_view prefix);

  friend bool operator==(const ParameterSet& a, const ParameterSet& b);

 private:
  std::vector<ParamEntry> entries_;
};

// Largest |a - b| over all coordinates; layouts must match.
double MaxAbsDifference(const ParameterSet& a, const ParameterSet& b);

}  // namespace eikgcrl::diffcore

#endif  // EIKGCRL_DIFFCORE_PARAMETER_SET_H_
