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

#include "smult/canopy.h"

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <utility>

#include "smult/error.h"

namespace smult {

std::optional<std::size_t> CanopyVertexCount(std::size_t K, std::size_t L,
                                             std::size_t limit) {
  std::size_t level = 1;
  std::size_t total = 1;
  for (std::size_t n = 0; n < L; ++n) {
    if (level > limit / K) return std::nullopt;
    level *= K;
    total += level;
    if (total > limit) return std::nullopt;
  }
  if (total > limit) return std::nullopt;
  return total;
}

TruncatedCanopy BuildTruncatedCanopy(std::size_t K, std::size_t L,
                                     std::size_t vertex_cap) {
  if (K < 2) {
    throw Error(ErrorCode::kInvalidArgument, "canopy branching K must be >= 2");
  }
  const auto count = CanopyVertexCount(K, L, vertex_cap);
  if (!count) {
    throw Error(ErrorCode::kTooLarge,
                "canopy tree with K=" + std::to_string(K) +
                    " L=" + std::to_string(L) + " exceeds the cap of " +
                    std::to_string(vertex_cap) + " vertices");
  }

  TruncatedCanopy t;
  t.K = K;
  t.L = L;
  t.depth.reserve(*count);
  t.parent.reserve(*count);
  t.children.reserve(*count);

  // Horizontal coordinate x of (x, n); the children of (x, n) are
  // (Kx + k, n - 1).
  std::vector<std::size_t> coord;
  coord.reserve(*count);

  std::vector<Edge> edges;
  edges.reserve(*count - 1);
  t.depth.push_back(L);
  t.parent.push_back(std::nullopt);
  t.children.emplace_back();
  coord.push_back(0);
  for (Vertex v = 0; v < t.depth.size(); ++v) {
    if (t.depth[v] == 0) continue;
    for (std::size_t k = 0; k < K; ++k) {
      const Vertex c = t.depth.size();
      t.depth.push_back(t.depth[v] - 1);
      t.parent.push_back(v);
      t.children.emplace_back();
      coord.push_back(K * coord[v] + k);
      t.children[v].push_back(c);
      edges.push_back({v, c});
    }
  }

  std::map<Vertex, std::string> labels;
  for (Vertex v = 0; v < t.depth.size(); ++v) {
    labels[v] = "(" + std::to_string(coord[v]) + "," +
                std::to_string(t.depth[v]) + ")";
  }
  t.graph = FiniteGraph(t.depth.size(), std::move(edges), std::move(labels));
  return t;
}

std::span<const Vertex> ForwardNeighbors(const TruncatedCanopy& t, Vertex w) {
  return t.children.at(w);
}

bool Precedes(const TruncatedCanopy& t, Vertex v, Vertex w) {
  if (t.depth.at(v) > t.depth.at(w)) return false;
  Vertex cur = v;
  for (std::size_t steps = t.depth[w] - t.depth[v]; steps > 0; --steps) {
    cur = *t.parent[cur];
  }
  return cur == w;
}

std::vector<Vertex> Subtree(const TruncatedCanopy& t, Vertex w,
                            std::size_t j) {
  if (t.depth.at(w) < j) {
    throw Error(ErrorCode::kIncompleteSubtree,
                "vertex " + std::to_string(w) + " at depth " +
                    std::to_string(t.depth[w]) +
                    " has no complete subtree of depth " + std::to_string(j));
  }
  std::vector<Vertex> out{w};
  const std::size_t floor_depth = t.depth[w] - j;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Vertex v = out[i];
    if (t.depth[v] == floor_depth) continue;
    for (Vertex c : t.children[v]) out.push_back(c);
  }
  return out;
}

std::optional<std::size_t> PatchSet::root_position(Vertex x) const {
  auto it = std::lower_bound(roots.begin(), roots.end(), x);
  if (it == roots.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - roots.begin());
}

PatchSet PotentialRoots(const TruncatedCanopy& t, std::size_t l) {
  if (l == 0) {
    throw Error(ErrorCode::kInvalidArgument, "patch depth l must be >= 1");
  }
  if (t.L % (l + 1) != l) {
    throw Error(ErrorCode::kTilingMismatch,
                "L=" + std::to_string(t.L) + " is not congruent to l=" +
                    std::to_string(l) + " modulo " + std::to_string(l + 1));
  }
  PatchSet p;
  p.l = l;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (t.depth[v] % (l + 1) == l) p.roots.push_back(v);
  }
  p.patch_index.resize(t.size());
  // Breadth-first order visits parents first, so each vertex inherits the
  // patch of its parent unless it is a root itself.
  for (Vertex v = 0; v < t.size(); ++v) {
    if (t.depth[v] % (l + 1) == l) {
      p.patch_index[v] = *p.root_position(v);
    } else {
      p.patch_index[v] = p.patch_index[*t.parent[v]];
    }
  }
  return p;
}

}  // namespace smult
