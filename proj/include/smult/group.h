// Copyright 2026 The smult Authors
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

#ifndef SMULT_GROUP_H_
#define SMULT_GROUP_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace smult {

inline constexpr std::size_t kDefaultGroupElementCap = 200'000;

enum class GroupKind {
  kCyclic,         // Z_m, generator 1
  kCyclicProduct,  // Z_m1 x ... x Z_mk, unit-vector generators
  kIntegerBox,     // Z^d restricted to [-R, R]^d, unit-vector generators
  kFreeBall,       // free group on r letters, reduced words of length <= R
  kTable,          // explicit multiplication table
};

// Finitely generated group, either finite (exact) or an infinite group
// truncated to a finite enumeration. Elements are dense indices; products
// leaving a truncation are reported as std::nullopt.
class Group {
 public:
  static Group Cyclic(std::size_t m);
  static Group CyclicProduct(std::vector<std::size_t> moduli);
  static Group IntegerBox(std::size_t dimension, std::size_t radius,
                          std::size_t element_cap = kDefaultGroupElementCap);
  static Group FreeBall(std::size_t rank, std::size_t radius,
                        std::size_t element_cap = kDefaultGroupElementCap);
  // Validates closure, identity, inverses and associativity (exhaustive up
  // to 64 elements, 20000 seeded random triples beyond).
  static Group FromTable(std::vector<std::vector<std::size_t>> table,
                         std::vector<std::size_t> generators);

  GroupKind kind() const { return kind_; }
  const std::string& description() const { return description_; }
  std::size_t size() const { return keys_.size(); }
  bool is_finite() const {
    return kind_ != GroupKind::kIntegerBox && kind_ != GroupKind::kFreeBall;
  }
  std::size_t identity() const { return identity_; }

  std::size_t generator_count() const { return generators_.size(); }
  const std::vector<std::size_t>& generators() const { return generators_; }

  std::optional<std::size_t> Multiply(std::size_t a, std::size_t b) const;
  std::optional<std::size_t> Inverse(std::size_t a) const;

  // g * g_i, cached.
  std::optional<std::size_t> TimesGenerator(std::size_t g,
                                            std::size_t i) const {
    return times_generator_.at(g).at(i);
  }
  // Whether g * g_i and g * g_i^{-1} stay in the enumeration for every i.
  bool interior(std::size_t g) const { return interior_.at(g); }

  const std::vector<int>& key(std::size_t g) const { return keys_.at(g); }
  std::string label(std::size_t g) const;

 private:
  Group() = default;
  void Finish();
  std::optional<std::size_t> Lookup(const std::vector<int>& key) const;

  GroupKind kind_ = GroupKind::kCyclic;
  std::string description_;
  std::vector<std::size_t> moduli_;
  std::size_t radius_ = 0;
  std::vector<std::vector<int>> keys_;
  std::map<std::vector<int>, std::size_t> index_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> generators_;
  std::size_t identity_ = 0;
  std::vector<std::vector<std::optional<std::size_t>>> times_generator_;
  std::vector<bool> interior_;
};

// "cyclic:6", "product:2x2", "box:2:3" (dimension 2, radius 3),
// "free:2:3" (rank 2, radius 3).
Group ParseGroup(const std::string& text);

}  // namespace smult

#endif  // SMULT_GROUP_H_
