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

#ifndef SMULT_CANOPY_H_
#define SMULT_CANOPY_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "smult/graph.h"

namespace smult {

inline constexpr std::size_t kDefaultTreeVertexCap = 200'000;

// Complete subtree of the degree-(K+1) canopy tree below a single vertex at
// distance L from the leaf boundary. Vertices are enumerated breadth-first
// from the root (index 0) with children ordered left to right, so the
// vertex order of any subtree matches that of a freshly built tree of the
// same depth. Vertex (x, n) of the infinite tree is recorded as its label.
struct TruncatedCanopy {
  std::size_t K = 0;
  std::size_t L = 0;
  FiniteGraph graph;
  std::vector<std::size_t> depth;  // distance to the leaf boundary
  std::vector<std::optional<Vertex>> parent;
  std::vector<std::vector<Vertex>> children;

  Vertex root() const { return 0; }
  std::size_t size() const { return depth.size(); }
};

// (K^{L+1} - 1) / (K - 1), or std::nullopt once it exceeds `limit`.
std::optional<std::size_t> CanopyVertexCount(std::size_t K, std::size_t L,
                                             std::size_t limit);

TruncatedCanopy BuildTruncatedCanopy(
    std::size_t K, std::size_t L,
    std::size_t vertex_cap = kDefaultTreeVertexCap);

// N_w: the K children of w, empty at the boundary.
std::span<const Vertex> ForwardNeighbors(const TruncatedCanopy& t, Vertex w);

// v lies on the path from w down towards the boundary (v == w included).
bool Precedes(const TruncatedCanopy& t, Vertex v, Vertex w);

// Lambda_j(w) in canonical breadth-first order. Requires depth(w) >= j,
// otherwise kIncompleteSubtree.
std::vector<Vertex> Subtree(const TruncatedCanopy& t, Vertex w, std::size_t j);

// The potential roots at depths l, 2l+1, 3l+2, ... and the patch Lambda_l(x)
// containing each vertex.
struct PatchSet {
  std::size_t l = 0;
  std::vector<Vertex> roots;               // ascending vertex index
  std::vector<std::size_t> patch_index;    // vertex -> position in roots

  Vertex patch_of(Vertex v) const { return roots.at(patch_index.at(v)); }
  std::optional<std::size_t> root_position(Vertex x) const;
};

// Requires l >= 1 and L = l (mod l+1); kTilingMismatch otherwise.
PatchSet PotentialRoots(const TruncatedCanopy& t, std::size_t l);

}  // namespace smult

#endif  // SMULT_CANOPY_H_
