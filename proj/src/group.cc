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

#include "smult/group.h"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <sstream>
#include <utility>

#include "smult/error.h"

namespace smult {
namespace {

std::vector<int> ReduceWord(std::vector<int> word) {
  std::vector<int> out;
  out.reserve(word.size());
  for (int letter : word) {
    if (!out.empty() && out.back() == -letter) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
  }
  return out;
}

std::size_t ParseCount(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || text.front() == '-') {
    throw Error(ErrorCode::kInvalidArgument,
                "bad " + what + " '" + text + "' in group spec");
  }
  return static_cast<std::size_t>(value);
}

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

}  // namespace

Group Group::Cyclic(std::size_t m) {
  if (m == 0) {
    throw Error(ErrorCode::kInvalidArgument, "cyclic group order must be >= 1");
  }
  Group g;
  g.kind_ = GroupKind::kCyclic;
  g.description_ = "cyclic:" + std::to_string(m);
  g.moduli_ = {m};
  for (std::size_t a = 0; a < m; ++a) {
    g.keys_.push_back({static_cast<int>(a)});
  }
  if (m > 1) g.generators_ = {1};
  g.Finish();
  return g;
}

Group Group::CyclicProduct(std::vector<std::size_t> moduli) {
  if (moduli.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "product needs at least one factor");
  }
  std::size_t order = 1;
  for (std::size_t m : moduli) {
    if (m == 0) {
      throw Error(ErrorCode::kInvalidArgument, "cyclic factor order must be >= 1");
    }
    order *= m;
    if (order > kDefaultGroupElementCap) {
      throw Error(ErrorCode::kTooLarge, "cyclic product has too many elements");
    }
  }
  Group g;
  g.kind_ = GroupKind::kCyclicProduct;
  g.description_ = "product:";
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    g.description_ += (i ? "x" : "") + std::to_string(moduli[i]);
  }
  g.moduli_ = std::move(moduli);
  std::vector<int> key(g.moduli_.size(), 0);
  for (std::size_t n = 0; n < order; ++n) {
    g.keys_.push_back(key);
    for (std::size_t d = key.size(); d-- > 0;) {
      if (++key[d] < static_cast<int>(g.moduli_[d])) break;
      key[d] = 0;
    }
  }
  g.Finish();
  // Trivial factors contribute no generator.
  for (std::size_t d = 0; d < g.moduli_.size(); ++d) {
    if (g.moduli_[d] == 1) continue;
    std::vector<int> unit(g.moduli_.size(), 0);
    unit[d] = 1;
    g.generators_.push_back(*g.Lookup(unit));
  }
  g.Finish();
  return g;
}

Group Group::IntegerBox(std::size_t dimension, std::size_t radius,
                        std::size_t element_cap) {
  if (dimension == 0) {
    throw Error(ErrorCode::kInvalidArgument, "box dimension must be >= 1");
  }
  const std::size_t side = 2 * radius + 1;
  std::size_t order = 1;
  for (std::size_t d = 0; d < dimension; ++d) {
    order *= side;
    if (order > element_cap) {
      throw Error(ErrorCode::kTooLarge, "integer box has too many elements");
    }
  }
  Group g;
  g.kind_ = GroupKind::kIntegerBox;
  g.description_ =
      "box:" + std::to_string(dimension) + ":" + std::to_string(radius);
  g.radius_ = radius;
  const int r = static_cast<int>(radius);
  std::vector<int> key(dimension, -r);
  for (std::size_t n = 0; n < order; ++n) {
    g.keys_.push_back(key);
    for (std::size_t d = dimension; d-- > 0;) {
      if (++key[d] <= r) break;
      key[d] = -r;
    }
  }
  g.Finish();
  for (std::size_t d = 0; d < dimension; ++d) {
    std::vector<int> unit(dimension, 0);
    unit[d] = 1;
    if (auto idx = g.Lookup(unit)) g.generators_.push_back(*idx);
  }
  g.Finish();
  return g;
}

Group Group::FreeBall(std::size_t rank, std::size_t radius,
                      std::size_t element_cap) {
  if (rank == 0) {
    throw Error(ErrorCode::kInvalidArgument, "free group rank must be >= 1");
  }
  Group g;
  g.kind_ = GroupKind::kFreeBall;
  g.description_ =
      "free:" + std::to_string(rank) + ":" + std::to_string(radius);
  g.radius_ = radius;
  g.keys_.push_back({});
  std::size_t level_begin = 0;
  for (std::size_t len = 0; len < radius; ++len) {
    const std::size_t level_end = g.keys_.size();
    for (std::size_t w = level_begin; w < level_end; ++w) {
      for (std::size_t k = 1; k <= rank; ++k) {
        for (int letter : {static_cast<int>(k), -static_cast<int>(k)}) {
          const auto& word = g.keys_[w];
          if (!word.empty() && word.back() == -letter) continue;
          auto next = word;
          next.push_back(letter);
          g.keys_.push_back(std::move(next));
          if (g.keys_.size() > element_cap) {
            throw Error(ErrorCode::kTooLarge, "free-group ball too large");
          }
        }
      }
    }
    level_begin = level_end;
  }
  g.Finish();
  if (radius >= 1) {
    for (std::size_t k = 1; k <= rank; ++k) {
      g.generators_.push_back(*g.Lookup({static_cast<int>(k)}));
    }
  }
  g.Finish();
  return g;
}

Group Group::FromTable(std::vector<std::vector<std::size_t>> table,
                       std::vector<std::size_t> generators) {
  const std::size_t n = table.size();
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "multiplication table is empty");
  }
  for (const auto& row : table) {
    if (row.size() != n) {
      throw Error(ErrorCode::kInvalidArgument, "multiplication table not square");
    }
    for (std::size_t c : row) {
      if (c >= n) {
        throw Error(ErrorCode::kInvalidArgument, "table entry outside the group");
      }
    }
  }
  std::optional<std::size_t> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      ok = table[e][a] == a && table[a][e] == a;
    }
    if (ok) identity = e;
  }
  if (!identity) {
    throw Error(ErrorCode::kInvalidArgument, "table has no identity element");
  }
  for (std::size_t a = 0; a < n; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < n && !found; ++b) {
      found = table[a][b] == *identity && table[b][a] == *identity;
    }
    if (!found) {
      throw Error(ErrorCode::kInvalidArgument,
                  "element " + std::to_string(a) + " has no inverse");
    }
  }
  auto associative = [&](std::size_t a, std::size_t b, std::size_t c) {
    return table[table[a][b]][c] == table[a][table[b][c]];
  };
  if (n <= 64) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (!associative(a, b, c)) {
            throw Error(ErrorCode::kInvalidArgument, "table is not associative");
          }
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int trial = 0; trial < 20000; ++trial) {
      if (!associative(pick(rng), pick(rng), pick(rng))) {
        throw Error(ErrorCode::kInvalidArgument, "table is not associative");
      }
    }
  }
  for (std::size_t gen : generators) {
    if (gen >= n) {
      throw Error(ErrorCode::kInvalidArgument, "generator outside the group");
    }
  }
  Group g;
  g.kind_ = GroupKind::kTable;
  g.description_ = "table:" + std::to_string(n);
  g.table_ = std::move(table);
  for (std::size_t a = 0; a < n; ++a) g.keys_.push_back({static_cast<int>(a)});
  g.generators_ = std::move(generators);
  g.Finish();
  return g;
}

void Group::Finish() {
  index_.clear();
  for (std::size_t n = 0; n < keys_.size(); ++n) index_[keys_[n]] = n;
  switch (kind_) {
    case GroupKind::kCyclic:
    case GroupKind::kFreeBall:
      identity_ = 0;
      break;
    case GroupKind::kCyclicProduct:
      identity_ = *Lookup(std::vector<int>(moduli_.size(), 0));
      break;
    case GroupKind::kIntegerBox:
      identity_ = *Lookup(std::vector<int>(keys_.front().size(), 0));
      break;
    case GroupKind::kTable:
      for (std::size_t e = 0; e < keys_.size(); ++e) {
        if (table_[e][e] == e) identity_ = e;
      }
      break;
  }
  times_generator_.assign(size(), {});
  interior_.assign(size(), true);
  for (std::size_t g = 0; g < size(); ++g) {
    for (std::size_t gen : generators_) {
      times_generator_[g].push_back(Multiply(g, gen));
      const auto inv = Inverse(gen);
      if (!times_generator_[g].back() || !inv || !Multiply(g, *inv)) {
        interior_[g] = false;
      }
    }
  }
}

std::optional<std::size_t> Group::Lookup(const std::vector<int>& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Group::Multiply(std::size_t a, std::size_t b) const {
  const auto& ka = keys_.at(a);
  const auto& kb = keys_.at(b);
  switch (kind_) {
    case GroupKind::kCyclic:
    case GroupKind::kCyclicProduct: {
      std::vector<int> out(ka.size());
      for (std::size_t d = 0; d < ka.size(); ++d) {
        out[d] = (ka[d] + kb[d]) % static_cast<int>(moduli_[d]);
      }
      return Lookup(out);
    }
    case GroupKind::kIntegerBox: {
      std::vector<int> out(ka.size());
      for (std::size_t d = 0; d < ka.size(); ++d) out[d] = ka[d] + kb[d];
      return Lookup(out);
    }
    case GroupKind::kFreeBall: {
      std::vector<int> word = ka;
      word.insert(word.end(), kb.begin(), kb.end());
      return Lookup(ReduceWord(std::move(word)));
    }
    case GroupKind::kTable:
      return table_[a][b];
  }
  return std::nullopt;
}

std::optional<std::size_t> Group::Inverse(std::size_t a) const {
  const auto& ka = keys_.at(a);
  switch (kind_) {
    case GroupKind::kCyclic:
    case GroupKind::kCyclicProduct: {
      std::vector<int> out(ka.size());
      for (std::size_t d = 0; d < ka.size(); ++d) {
        const int m = static_cast<int>(moduli_[d]);
        out[d] = (m - ka[d]) % m;
      }
      return Lookup(out);
    }
    case GroupKind::kIntegerBox: {
      std::vector<int> out(ka.size());
      for (std::size_t d = 0; d < ka.size(); ++d) out[d] = -ka[d];
      return Lookup(out);
    }
    case GroupKind::kFreeBall: {
      std::vector<int> out(ka.rbegin(), ka.rend());
      for (int& letter : out) letter = -letter;
      return Lookup(out);
    }
    case GroupKind::kTable:
      for (std::size_t b = 0; b < size(); ++b) {
        if (table_[a][b] == identity_) return b;
      }
      return std::nullopt;
  }
  return std::nullopt;
}

std::string Group::label(std::size_t g) const {
  const auto& k = keys_.at(g);
  switch (kind_) {
    case GroupKind::kCyclic:
    case GroupKind::kTable:
      return std::to_string(k.front());
    case GroupKind::kCyclicProduct:
    case GroupKind::kIntegerBox: {
      std::string s = "(";
      for (std::size_t d = 0; d < k.size(); ++d) {
        s += (d ? "," : "") + std::to_string(k[d]);
      }
      return s + ")";
    }
    case GroupKind::kFreeBall: {
      if (k.empty()) return "e";
      std::string s;
      for (int letter : k) {
        const char base = letter > 0 ? 'a' : 'A';
        s += static_cast<char>(base + std::abs(letter) - 1);
      }
      return s;
    }
  }
  return {};
}

Group ParseGroup(const std::string& text) {
  const auto parts = Split(text, ':');
  if (parts.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty group spec");
  }
  const std::string& kind = parts[0];
  if (kind == "cyclic" && parts.size() == 2) {
    return Group::Cyclic(ParseCount(parts[1], "order"));
  }
  if (kind == "product" && parts.size() == 2) {
    std::vector<std::size_t> moduli;
    for (const auto& m : Split(parts[1], 'x')) {
      moduli.push_back(ParseCount(m, "factor"));
    }
    return Group::CyclicProduct(std::move(moduli));
  }
  if (kind == "box" && parts.size() == 3) {
    return Group::IntegerBox(ParseCount(parts[1], "dimension"),
                             ParseCount(parts[2], "radius"));
  }
  if (kind == "free" && parts.size() == 3) {
    return Group::FreeBall(ParseCount(parts[1], "rank"),
                           ParseCount(parts[2], "radius"));
  }
  throw Error(ErrorCode::kInvalidArgument, "unrecognized group spec '" + text +
                                               "' (expected cyclic:m, "
                                               "product:axb, box:d:R, free:r:R)");
}

}  // namespace smult
